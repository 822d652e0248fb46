#include "salt/eval.hpp"

#include <algorithm>
#include <fstream>
#include <set>

#include "json.hpp"

#include "salt/errors.hpp"
#include "salt/prompts.hpp"
#include "salt/text.hpp"

namespace salt {

using nlohmann::json;

LexicalMatcher::LexicalMatcher(double threshold) : threshold_(threshold) {
    if (threshold <= 0.0 || threshold > 1.0) {
        throw ContractError("lexical matcher threshold must be in (0,1]");
    }
}

bool LexicalMatcher::matches(const std::string& sub_event,
                             const std::string& hypothesis_text) const {
    std::vector<std::string> needed = content_tokens(sub_event);
    std::sort(needed.begin(), needed.end());
    needed.erase(std::unique(needed.begin(), needed.end()), needed.end());
    if (needed.empty()) return false;

    std::vector<std::string> have = content_tokens(hypothesis_text);
    std::sort(have.begin(), have.end());
    std::size_t hit = 0;
    for (const auto& w : needed) {
        if (std::binary_search(have.begin(), have.end(), w)) ++hit;
    }
    return static_cast<double>(hit) / static_cast<double>(needed.size()) >= threshold_;
}

bool BackendJudgeMatcher::matches(const std::string& sub_event,
                                  const std::string& hypothesis_text) const {
    std::string reply = backend_.generate(prompts::subevent_judgement(sub_event, hypothesis_text));
    return prompts::parse_yes_no(reply);
}

double retrieval_performance(const std::vector<Hypothesis>& hypotheses,
                             const Scenario& scenario) {
    if (scenario.relevant_article_ids.empty()) {
        throw ContractError("retrieval_performance undefined: scenario " + scenario.id +
                            " has no relevant articles");
    }
    std::set<std::string> cited;
    for (const auto& h : hypotheses) cited.insert(h.references.begin(), h.references.end());
    std::size_t hit = 0;
    for (const auto& id : scenario.relevant_article_ids) {
        if (cited.count(id) > 0) ++hit;
    }
    return 100.0 * static_cast<double>(hit) /
           static_cast<double>(scenario.relevant_article_ids.size());
}

double hypothesis_quality(const std::vector<Hypothesis>& hypotheses, const Scenario& scenario,
                          const SubEventMatcher& matcher) {
    if (scenario.sub_events.empty()) {
        throw ContractError("hypothesis_quality undefined: scenario " + scenario.id +
                            " has no sub-events");
    }
    std::size_t hit = 0;
    for (const auto& sub_event : scenario.sub_events) {
        for (const auto& h : hypotheses) {
            if (matcher.matches(sub_event, h.text)) {
                ++hit;
                break;
            }
        }
    }
    return 100.0 * static_cast<double>(hit) / static_cast<double>(scenario.sub_events.size());
}

EvaluationReport evaluate_run(const std::map<std::string, std::vector<Hypothesis>>& per_query,
                              const QuerySet& query_set, const SubEventMatcher& matcher,
                              std::string system, std::uint64_t seed, std::string config_hash) {
    EvaluationReport report;
    report.system = std::move(system);
    report.matcher = matcher.name();
    report.seed = seed;
    report.config_hash = std::move(config_hash);

    for (const auto& query : query_set.queries) {
        auto scenarios = query_set.scenarios_for(query.id);
        if (scenarios.empty()) continue;

        static const std::vector<Hypothesis> kNone;
        auto it = per_query.find(query.id);
        const std::vector<Hypothesis>& hypotheses = it == per_query.end() ? kNone : it->second;

        QueryScore score;
        score.query_id = query.id;
        for (const Scenario* scenario : scenarios) {
            ScenarioScore s;
            s.scenario_id = scenario->id;
            s.rp = retrieval_performance(hypotheses, *scenario);
            for (const auto& sub_event : scenario->sub_events) {
                bool hit = false;
                for (const auto& h : hypotheses) {
                    if (matcher.matches(sub_event, h.text)) {
                        hit = true;
                        break;
                    }
                }
                s.sub_event_hits.push_back(hit);
            }
            std::size_t hits = static_cast<std::size_t>(
                std::count(s.sub_event_hits.begin(), s.sub_event_hits.end(), true));
            s.hq = 100.0 * static_cast<double>(hits) /
                   static_cast<double>(scenario->sub_events.size());
            score.rp += s.rp;
            score.hq += s.hq;
            score.scenarios.push_back(std::move(s));
        }
        score.rp /= static_cast<double>(score.scenarios.size());
        score.hq /= static_cast<double>(score.scenarios.size());
        report.per_query.push_back(std::move(score));
    }

    if (!report.per_query.empty()) {
        for (const auto& q : report.per_query) {
            report.aggregate_rp += q.rp;
            report.aggregate_hq += q.hq;
        }
        report.aggregate_rp /= static_cast<double>(report.per_query.size());
        report.aggregate_hq /= static_cast<double>(report.per_query.size());
    }
    return report;
}

StratifiedTable stratify_by_complexity(const std::vector<EvaluationReport>& reports,
                                       const WorkloadManifest& manifest) {
    std::map<std::pair<std::string, std::string>, ComplexityMetrics> metrics_of;
    for (const auto& row : manifest.rows) {
        metrics_of[{row.query_id, row.scenario_id}] = row.metrics;
    }

    std::map<int, std::pair<double, int>> lateral_buckets;   // L -> (sum, count)
    std::map<int, std::pair<double, int>> tercile_buckets;   // tercile -> (sum, count)
    for (const auto& report : reports) {
        for (const auto& q : report.per_query) {
            for (const auto& s : q.scenarios) {
                auto it = metrics_of.find({q.query_id, s.scenario_id});
                if (it == metrics_of.end()) {
                    throw ContractError("no workload metrics for scenario " + s.scenario_id);
                }
                const ComplexityMetrics& m = it->second;
                auto& lb = lateral_buckets[m.lateral_measure];
                lb.first += s.hq;
                lb.second += 1;
                int tercile = m.uncertainty < 1.0 / 3 ? 0 : (m.uncertainty < 2.0 / 3 ? 1 : 2);
                auto& tb = tercile_buckets[tercile];
                tb.first += s.hq;
                tb.second += 1;
            }
        }
    }

    StratifiedTable table;
    for (int l = 1; l <= 7; ++l) {
        auto it = lateral_buckets.find(l);
        if (it == lateral_buckets.end()) {
            table.notes.push_back("bucket L=" + std::to_string(l) + " omitted (no queries)");
            continue;
        }
        table.rows.push_back({"lateral", "L=" + std::to_string(l),
                              it->second.first / it->second.second, it->second.second});
    }
    for (int t = 0; t < 3; ++t) {
        auto it = tercile_buckets.find(t);
        if (it == tercile_buckets.end()) {
            table.notes.push_back("uncertainty tercile " + std::to_string(t) +
                                  " omitted (no queries)");
            continue;
        }
        table.rows.push_back({"uncertainty", "tercile-" + std::to_string(t),
                              it->second.first / it->second.second, it->second.second});
    }
    return table;
}

void save_report(const EvaluationReport& report, const std::string& path) {
    json per_query = json::array();
    for (const auto& q : report.per_query) {
        json scenarios = json::array();
        for (const auto& s : q.scenarios) {
            scenarios.push_back(json{{"scenario_id", s.scenario_id},
                                     {"rp", s.rp},
                                     {"hq", s.hq},
                                     {"sub_event_hits", s.sub_event_hits}});
        }
        per_query.push_back(json{
            {"query_id", q.query_id}, {"rp", q.rp}, {"hq", q.hq}, {"scenarios", scenarios}});
    }
    json doc{{"system", report.system},
             {"matcher", report.matcher},
             {"seed", report.seed},
             {"config_hash", report.config_hash},
             {"aggregate_rp", report.aggregate_rp},
             {"aggregate_hq", report.aggregate_hq},
             {"per_query", per_query}};
    std::ofstream out(path);
    if (!out) throw ValidationError("cannot write report: " + path);
    out << doc.dump(2) << '\n';
}

void save_stratified_csv(const StratifiedTable& table, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ValidationError("cannot write stratified table: " + path);
    out << "metric,bucket,mean_hq,count\n";
    for (const auto& row : table.rows) {
        out << row.metric << ',' << row.bucket << ',' << row.mean_hq << ',' << row.count << '\n';
    }
    for (const auto& note : table.notes) out << "# " << note << '\n';
}

}  // namespace salt
