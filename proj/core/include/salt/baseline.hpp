#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "salt/backend.hpp"
#include "salt/engine.hpp"
#include "salt/types.hpp"

namespace salt {

struct BaselineParams {
    int batch_size = 10;
    std::optional<long long> start_index;  // date-range filter on raw timestamps
    std::optional<long long> end_index;    // inclusive
    bool include_previous = true;          // carry the prior hypothesis into the prompt
    int window_batches = 1;                // rolling article window; appendix default 1
    int excerpt_words = 240;               // per-article prompt budget

    void validate() const;
};

// Ordered hypothesis history per query; one entry per processed batch.
struct TemporalContext {
    std::map<std::string, std::vector<Hypothesis>> per_query;
    bool aborted = false;
    std::string abort_reason;
};

// Single-agent comparison system: per batch and per query, prompt the backend
// with the current article window plus (optionally) the previous hypothesis.
// Queries are processed independently; no information crosses between them.
// Emits engine-format batch records through sink when given.
TemporalContext run_baseline(const std::vector<Article>& corpus,
                             const std::vector<Query>& queries, TextBackend& backend,
                             const BaselineParams& params, BatchRecordSink* sink = nullptr);

}  // namespace salt
