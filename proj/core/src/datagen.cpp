#include "salt/datagen.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "json.hpp"

#include "salt/errors.hpp"
#include "salt/logging.hpp"
#include "salt/prompts.hpp"
#include "salt/text.hpp"

namespace salt {

using nlohmann::json;

const std::vector<std::string> kDefaultDomains = {
    "geopolitics", "technology",     "climate",  "energy", "agriculture",
    "finance",     "transportation", "health",   "labor",  "security",
};

void GenerationSpec::validate() const {
    if (query_text.empty()) throw ValidationError("generation spec: query text is empty");
    if (scenario_count < 1) throw ValidationError("generation spec: scenario count must be >= 1");
    if (articles_per_scenario[0] < 20 || articles_per_scenario[1] > 100 ||
        articles_per_scenario[0] > articles_per_scenario[1]) {
        throw ValidationError("generation spec: articles per scenario must lie within [20, 100]");
    }
    if (length_range[0] < 200 || length_range[1] > 1000 || length_range[0] > length_range[1]) {
        throw ValidationError("generation spec: article length below paper bound [200, 1000]");
    }
    if (perspectives.empty()) throw ValidationError("generation spec: perspective mix is empty");
    if (temporal.kind == TemporalDistribution::Kind::uniform) {
        if (temporal.span < 1) throw ValidationError("generation spec: temporal span must be >= 1");
    } else {
        if (temporal.center < 0 || temporal.width < 0) {
            throw ValidationError("generation spec: clustered center/width must be >= 0");
        }
    }
}

namespace {

int clamp_lateral(int value) { return std::clamp(value, 1, 7); }

std::string padded(int n, int width = 4) {
    std::ostringstream out;
    out << std::setw(width) << std::setfill('0') << n;
    return out.str();
}

}  // namespace

std::vector<Scenario> generate_scenarios(const Query& query, int n, TextBackend& backend,
                                         std::uint64_t seed) {
    if (n < 1) throw ContractError("generate_scenarios requires n >= 1");
    std::vector<Scenario> scenarios;
    scenarios.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        std::string reply = backend.generate(prompts::scenario_generation(query, i, n));
        prompts::ScenarioReply parsed = prompts::parse_scenario(reply);
        if (parsed.sub_events.empty()) {
            log_warn("scenario reply for " + query.id + " had no sub-events; using query keywords");
            parsed.sub_events = {join(ranked_keywords(query.text, 4), " ")};
            if (parsed.description.empty()) parsed.description = parsed.sub_events.front();
        }

        Scenario s;
        s.id = query.id + "-s" + std::to_string(i);
        s.query_id = query.id;
        s.description = parsed.description;
        s.sub_events = parsed.sub_events;
        s.metrics.lateral_measure =
            clamp_lateral(static_cast<int>(s.sub_events.size()) - 1);
        s.metrics.uncertainty =
            parsed.uncertainty.value_or(round_to(seeded_unit(seed, "u|" + s.id), 1));
        s.metrics.time_lag = std::max<long long>(0, parsed.timespan_days.value_or(0));
        scenarios.push_back(std::move(s));
    }
    return scenarios;
}

std::vector<Article> generate_articles(Scenario& scenario, const GenerationSpec& spec,
                                       TextBackend& backend) {
    spec.validate();
    if (scenario.sub_events.empty()) {
        throw ContractError("scenario " + scenario.id + " has no sub-events");
    }

    Rng rng(fnv1a64(to_hex(spec.seed) + "|articles|" + scenario.id));
    int count = static_cast<int>(
        rng.uniform_int(spec.articles_per_scenario[0], spec.articles_per_scenario[1]));

    std::vector<Article> articles;
    articles.reserve(static_cast<std::size_t>(count));
    scenario.relevant_article_ids.clear();

    for (int i = 0; i < count; ++i) {
        const std::string& sub_event =
            scenario.sub_events[static_cast<std::size_t>(i) % scenario.sub_events.size()];
        const std::string& perspective = spec.perspectives[static_cast<std::size_t>(i) %
                                                           spec.perspectives.size()];
        int target = static_cast<int>(rng.uniform_int(spec.length_range[0], spec.length_range[1]));

        long long timestamp = 0;
        if (spec.temporal.kind == TemporalDistribution::Kind::uniform) {
            timestamp = rng.uniform_int(0, spec.temporal.span - 1);
        } else {
            long long lo = spec.temporal.center - spec.temporal.width / 2;
            long long hi = spec.temporal.center + spec.temporal.width / 2;
            timestamp = std::max<long long>(0, rng.uniform_int(lo, hi));
        }

        std::string reply = backend.generate(
            prompts::article_generation(scenario.id, sub_event, perspective, target, i));
        prompts::ArticleReply parsed = prompts::parse_article(reply);
        if (parsed.title.empty()) parsed.title = sub_event;

        // enforce the word budget regardless of how well the backend obeyed
        std::vector<std::string> words;
        {
            std::istringstream in(parsed.body);
            std::string w;
            while (in >> w) words.push_back(w);
        }
        if (static_cast<int>(words.size()) > target) {
            words.resize(static_cast<std::size_t>(target));
        }
        std::vector<std::string> topical = content_tokens(sub_event);
        if (topical.empty()) topical.push_back("update");
        std::size_t pad_cursor = 0;
        while (static_cast<int>(words.size()) < target) {
            words.push_back(topical[pad_cursor++ % topical.size()]);
        }

        std::string id = scenario.id + "-a" + padded(i);
        articles.push_back(Article::make(id, parsed.title, join(words, " "), timestamp,
                                         scenario.id, perspective));
        scenario.relevant_article_ids.push_back(std::move(id));
    }

    normalize_references(scenario.relevant_article_ids);

    long long min_ts = articles.front().timestamp, max_ts = articles.front().timestamp;
    for (const auto& a : articles) {
        min_ts = std::min(min_ts, a.timestamp);
        max_ts = std::max(max_ts, a.timestamp);
    }
    scenario.metrics.time_lag = max_ts - min_ts;
    return articles;
}

ComplexityMetrics score_complexity(const Query& query, const Scenario& scenario,
                                   const std::vector<Article>& corpus) {
    (void)query;  // metrics are defined per query-scenario pair; L/T/U need only the scenario
    ComplexityMetrics m;
    m.lateral_measure = clamp_lateral(static_cast<int>(scenario.sub_events.size()) - 1);
    m.uncertainty = std::clamp(scenario.metrics.uncertainty, 0.0, 1.0);

    bool found = false;
    long long min_ts = 0, max_ts = 0;
    for (const auto& a : corpus) {
        if (!std::binary_search(scenario.relevant_article_ids.begin(),
                                scenario.relevant_article_ids.end(), a.id)) {
            continue;
        }
        if (!found) {
            min_ts = max_ts = a.timestamp;
            found = true;
        } else {
            min_ts = std::min(min_ts, a.timestamp);
            max_ts = std::max(max_ts, a.timestamp);
        }
    }
    m.time_lag = found ? (max_ts - min_ts) : std::max<long long>(0, scenario.metrics.time_lag);
    return m;
}

WorkloadManifest balance_workload(const std::vector<WorkloadRow>& rows,
                                  const std::vector<std::string>& domains) {
    WorkloadManifest manifest;
    manifest.rows = rows;
    for (const auto& d : domains) manifest.domain_counts[d] = 0;

    std::map<std::string, std::string> domain_of_query;
    long long max_time_lag = 0;
    for (const auto& row : rows) {
        domain_of_query[row.query_id] = row.domain;
        manifest.lateral_histogram[row.metrics.lateral_measure] += 1;
        max_time_lag = std::max(max_time_lag, row.metrics.time_lag);
    }
    for (const auto& [query_id, domain] : domain_of_query) {
        manifest.domain_counts[domain] += 1;
    }

    for (const auto& row : rows) {
        // L range is 1..7: terciles [1,2], [3,4], [5,7]
        int l = row.metrics.lateral_measure;
        manifest.lateral_terciles[l <= 2 ? 0 : (l <= 4 ? 1 : 2)] += 1;

        double u = row.metrics.uncertainty;
        manifest.uncertainty_terciles[u < 1.0 / 3 ? 0 : (u < 2.0 / 3 ? 1 : 2)] += 1;

        if (max_time_lag == 0) {
            manifest.time_lag_terciles[0] += 1;
        } else {
            double frac = static_cast<double>(row.metrics.time_lag) /
                          static_cast<double>(max_time_lag);
            manifest.time_lag_terciles[frac < 1.0 / 3 ? 0 : (frac < 2.0 / 3 ? 1 : 2)] += 1;
        }
    }

    for (const auto& [domain, count] : manifest.domain_counts) {
        if (count == 0) manifest.flags.push_back("domain_empty:" + domain);
    }
    double sparse_floor = 0.10 * static_cast<double>(rows.size());
    const char* metric_names[3] = {"lateral", "uncertainty", "time_lag"};
    const std::array<int, 3>* tercile_sets[3] = {&manifest.lateral_terciles,
                                                 &manifest.uncertainty_terciles,
                                                 &manifest.time_lag_terciles};
    for (int m = 0; m < 3; ++m) {
        for (int t = 0; t < 3; ++t) {
            if (static_cast<double>((*tercile_sets[m])[static_cast<std::size_t>(t)]) <
                sparse_floor) {
                manifest.flags.push_back(std::string("tercile_sparse:") + metric_names[m] + ":" +
                                         std::to_string(t));
            }
        }
    }
    return manifest;
}

void save_workload_manifest(const WorkloadManifest& manifest, const std::string& path) {
    json rows = json::array();
    for (const auto& row : manifest.rows) {
        rows.push_back(json{{"query_id", row.query_id},
                            {"scenario_id", row.scenario_id},
                            {"domain", row.domain},
                            {"metrics",
                             json{{"lateral_measure", row.metrics.lateral_measure},
                                  {"time_lag", row.metrics.time_lag},
                                  {"uncertainty", row.metrics.uncertainty}}}});
    }
    json doc{{"rows", rows},
             {"domain_counts", manifest.domain_counts},
             {"lateral_histogram", json::object()},
             {"lateral_terciles", manifest.lateral_terciles},
             {"uncertainty_terciles", manifest.uncertainty_terciles},
             {"time_lag_terciles", manifest.time_lag_terciles},
             {"flags", manifest.flags}};
    for (const auto& [l, count] : manifest.lateral_histogram) {
        doc["lateral_histogram"][std::to_string(l)] = count;
    }
    std::ofstream out(path);
    if (!out) throw ValidationError("cannot write workload manifest: " + path);
    out << doc.dump(2) << '\n';
}

Workload generate_workload(const std::vector<GenerationSpec>& specs, TextBackend& backend) {
    if (specs.empty()) throw ValidationError("workload requires at least one generation spec");
    for (const auto& spec : specs) spec.validate();

    Workload w;
    std::vector<WorkloadRow> rows;
    for (std::size_t i = 0; i < specs.size(); ++i) {
        const GenerationSpec& spec = specs[i];
        Query query;
        query.id = "q" + std::to_string(i + 1);
        query.text = spec.query_text;

        std::vector<Scenario> scenarios =
            generate_scenarios(query, spec.scenario_count, backend, spec.seed);
        for (auto& scenario : scenarios) {
            std::vector<Article> articles = generate_articles(scenario, spec, backend);
            w.corpus.insert(w.corpus.end(), std::make_move_iterator(articles.begin()),
                            std::make_move_iterator(articles.end()));
            rows.push_back({query.id, scenario.id,
                            spec.domain.empty() ? "unassigned" : spec.domain, scenario.metrics});
            w.scenarios.push_back(std::move(scenario));
        }
        w.queries.push_back(std::move(query));
    }

    std::sort(w.corpus.begin(), w.corpus.end(), [](const Article& a, const Article& b) {
        if (a.timestamp != b.timestamp) return a.timestamp < b.timestamp;
        return a.id < b.id;
    });

    ValidationReport report = validate_corpus(w.corpus, w.scenarios);
    if (!report.ok()) {
        throw ValidationError("generated corpus failed validation: " +
                              report.issues.front().kind + " (" + report.issues.front().detail +
                              ")");
    }

    std::vector<std::string> domains = kDefaultDomains;
    for (const auto& spec : specs) {
        if (!spec.domain.empty() &&
            std::find(domains.begin(), domains.end(), spec.domain) == domains.end()) {
            domains.push_back(spec.domain);
        }
    }
    w.manifest = balance_workload(rows, domains);
    return w;
}

}  // namespace salt
