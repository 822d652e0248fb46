#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "salt/backend.hpp"
#include "salt/corpus.hpp"
#include "salt/datagen.hpp"
#include "salt/types.hpp"

namespace salt {

// Decides whether a hypothesis text identifies a ground-truth sub-event.
class SubEventMatcher {
  public:
    virtual ~SubEventMatcher() = default;
    virtual bool matches(const std::string& sub_event, const std::string& hypothesis_text) const = 0;
    virtual std::string name() const = 0;
};

// Deterministic default: a sub-event is identified when at least `threshold`
// of its distinct content words appear in the hypothesis text. Monotone:
// appending text never un-matches.
class LexicalMatcher final : public SubEventMatcher {
  public:
    explicit LexicalMatcher(double threshold = 0.6);
    bool matches(const std::string& sub_event, const std::string& hypothesis_text) const override;
    std::string name() const override { return "lexical"; }

  private:
    double threshold_;
};

// Live-run alternative: asks the backend YES/NO per (sub-event, hypothesis).
class BackendJudgeMatcher final : public SubEventMatcher {
  public:
    explicit BackendJudgeMatcher(TextBackend& backend) : backend_(backend) {}
    bool matches(const std::string& sub_event, const std::string& hypothesis_text) const override;
    std::string name() const override { return "backend-judge"; }

  private:
    TextBackend& backend_;
};

// 100 * |cited relevant ids| / |relevant ids|, citations unioned over all the
// query's hypotheses. Recall-only. Throws ContractError on an empty relevant set.
double retrieval_performance(const std::vector<Hypothesis>& hypotheses, const Scenario& scenario);

// 100 * (# sub-events matched by any hypothesis) / |sub_events|.
double hypothesis_quality(const std::vector<Hypothesis>& hypotheses, const Scenario& scenario,
                          const SubEventMatcher& matcher);

struct ScenarioScore {
    std::string scenario_id;
    double rp = 0.0;
    double hq = 0.0;
    std::vector<bool> sub_event_hits;  // aligned with scenario.sub_events
};

struct QueryScore {
    std::string query_id;
    double rp = 0.0;  // mean over the query's scenarios
    double hq = 0.0;
    std::vector<ScenarioScore> scenarios;
};

struct EvaluationReport {
    std::vector<QueryScore> per_query;
    double aggregate_rp = 0.0;  // unweighted mean over queries
    double aggregate_hq = 0.0;
    std::string system;
    std::string matcher;
    std::uint64_t seed = 0;
    std::string config_hash;
};

EvaluationReport evaluate_run(const std::map<std::string, std::vector<Hypothesis>>& per_query,
                              const QuerySet& query_set, const SubEventMatcher& matcher,
                              std::string system, std::uint64_t seed, std::string config_hash);

struct StratifiedRow {
    std::string metric;  // "lateral" | "uncertainty"
    std::string bucket;  // "L=3" | "tercile-0" ...
    double mean_hq = 0.0;
    int count = 0;
};

struct StratifiedTable {
    std::vector<StratifiedRow> rows;    // lateral buckets ascending, then terciles
    std::vector<std::string> notes;     // omitted empty buckets
};

// Mean HQ per lateral-measure bucket (1..7) and per uncertainty tercile,
// joining per-scenario scores with the manifest's metrics. Empty buckets are
// omitted and noted.
StratifiedTable stratify_by_complexity(const std::vector<EvaluationReport>& reports,
                                       const WorkloadManifest& manifest);

void save_report(const EvaluationReport& report, const std::string& path);
void save_stratified_csv(const StratifiedTable& table, const std::string& path);

}  // namespace salt
