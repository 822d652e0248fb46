#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "salt/backend.hpp"
#include "salt/corpus.hpp"
#include "salt/types.hpp"

namespace salt {

struct TemporalDistribution {
    enum class Kind { uniform, clustered };
    Kind kind = Kind::uniform;
    long long span = 180;   // uniform: day indices in [0, span)
    long long center = 90;  // clustered: [center - width/2, center + width/2]
    long long width = 14;
};

// One workload entry: a query and how to manufacture its evidence.
struct GenerationSpec {
    std::string query_text;
    std::string domain;
    int scenario_count = 3;
    std::array<int, 2> articles_per_scenario{20, 100};
    std::vector<std::string> perspectives{"conservative", "liberal", "neutral"};
    std::array<int, 2> length_range{200, 1000};
    TemporalDistribution temporal;
    std::uint64_t seed = 0;

    // Enforces the documented bounds (20..100 articles, 200..1000 words, ...).
    void validate() const;
};

// n scenarios with causal sub-event chains and complexity metrics; the
// relevant-article sets stay empty until generate_articles fills them.
std::vector<Scenario> generate_scenarios(const Query& query, int n, TextBackend& backend,
                                         std::uint64_t seed);

// Articles for one scenario: count and word targets drawn from the spec,
// timestamps from its temporal distribution (day indices), every sub-event
// covered by round-robin assignment. Updates the scenario's
// relevant_article_ids and recomputes its time lag from actual timestamps.
std::vector<Article> generate_articles(Scenario& scenario, const GenerationSpec& spec,
                                       TextBackend& backend);

// L = |sub_events| - 1 clamped to [1,7]; T = relevant-article timestamp spread
// in day indices (falling back to the scenario's stored estimate when none of
// its articles are in the corpus); U = the scenario's elicited value.
ComplexityMetrics score_complexity(const Query& query, const Scenario& scenario,
                                   const std::vector<Article>& corpus);

struct WorkloadRow {
    std::string query_id;
    std::string scenario_id;
    std::string domain;
    ComplexityMetrics metrics;
};

struct WorkloadManifest {
    std::vector<WorkloadRow> rows;               // one per (query, scenario)
    std::map<std::string, int> domain_counts;    // distinct queries per domain
    std::map<int, int> lateral_histogram;        // L value -> row count
    std::array<int, 3> lateral_terciles{0, 0, 0};
    std::array<int, 3> uncertainty_terciles{0, 0, 0};
    std::array<int, 3> time_lag_terciles{0, 0, 0};
    std::vector<std::string> flags;
};

extern const std::vector<std::string> kDefaultDomains;  // the 10 broad domains

WorkloadManifest balance_workload(const std::vector<WorkloadRow>& rows,
                                  const std::vector<std::string>& domains);

void save_workload_manifest(const WorkloadManifest& manifest, const std::string& path);

struct Workload {
    std::vector<Query> queries;
    std::vector<Scenario> scenarios;
    std::vector<Article> corpus;
    WorkloadManifest manifest;
};

// Whole-file driver used by the CLI: one query per spec entry, scenarios,
// articles, manifest. The result always passes validate_corpus.
Workload generate_workload(const std::vector<GenerationSpec>& specs, TextBackend& backend);

}  // namespace salt
