#include "salt/baseline.hpp"

#include <algorithm>

#include "salt/corpus.hpp"
#include "salt/errors.hpp"
#include "salt/logging.hpp"
#include "salt/prompts.hpp"

namespace salt {

void BaselineParams::validate() const {
    if (batch_size < 1) throw ValidationError("baseline batch_size must be >= 1");
    if (window_batches < 1) throw ValidationError("baseline window_batches must be >= 1");
    if (excerpt_words < 1) throw ValidationError("baseline excerpt_words must be >= 1");
    if (start_index && end_index && *start_index > *end_index) {
        throw ValidationError("baseline date range is inverted");
    }
}

TemporalContext run_baseline(const std::vector<Article>& corpus,
                             const std::vector<Query>& queries, TextBackend& backend,
                             const BaselineParams& params, BatchRecordSink* sink) {
    params.validate();

    std::vector<Article> filtered;
    filtered.reserve(corpus.size());
    for (const auto& a : corpus) {
        if (params.start_index && a.timestamp < *params.start_index) continue;
        if (params.end_index && a.timestamp > *params.end_index) continue;
        filtered.push_back(a);
    }

    std::vector<Batch> batches = batch_stream(std::move(filtered), params.batch_size);

    TemporalContext context;
    for (const auto& q : queries) context.per_query[q.id];  // empty histories up front

    for (const auto& batch : batches) {
        BatchRecord record;
        record.batch = batch.index;

        // rolling window: current batch plus up to window_batches-1 predecessors
        std::vector<Article> window;
        long long first = std::max<long long>(0, batch.index - (params.window_batches - 1));
        for (long long i = first; i <= batch.index; ++i) {
            const auto& articles = batches[static_cast<std::size_t>(i)].articles;
            window.insert(window.end(), articles.begin(), articles.end());
        }

        for (const auto& query : queries) {
            auto& history = context.per_query[query.id];
            const std::string* previous = nullptr;
            if (params.include_previous && !history.empty()) previous = &history.back().text;

            Hypothesis h;
            h.query_id = query.id;
            h.timestamp = batch.index;
            try {
                std::string reply = backend.generate(prompts::baseline_hypothesis(
                    query, window, previous, params.excerpt_words));
                prompts::HypothesisReply parsed = prompts::parse_hypothesis(reply);
                h.text = parsed.text;
                if (parsed.references_present) {
                    h.references = parsed.references;
                } else {
                    // lenient fallback: cite the whole window
                    for (const auto& a : window) h.references.push_back(a.id);
                }
                normalize_references(h.references);
            } catch (const BackendError& e) {
                if (e.terminal) {
                    context.aborted = true;
                    context.abort_reason = e.what();
                    log_warn("baseline aborted at batch " + std::to_string(batch.index) + ": " +
                             e.what());
                    if (sink != nullptr && !record.hypotheses.empty()) sink->write(record);
                    return context;
                }
                log_warn("baseline hypothesis for " + query.id + " skipped: " + e.what());
                h.text = "generation failed";
            }
            history.push_back(h);
            record.hypotheses.push_back(std::move(h));
        }
        if (sink != nullptr) sink->write(record);
    }
    return context;
}

}  // namespace salt
