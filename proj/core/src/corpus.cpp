#include "salt/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

#include "salt/errors.hpp"

namespace salt {

using nlohmann::json;

std::vector<const Scenario*> QuerySet::scenarios_for(const std::string& query_id) const {
    std::vector<const Scenario*> out;
    for (const auto& s : scenarios) {
        if (s.query_id == query_id) out.push_back(&s);
    }
    return out;
}

ValidationReport validate_corpus(const std::vector<Article>& corpus,
                                 const std::vector<Scenario>& scenarios) {
    ValidationReport report;
    std::set<std::string> ids;
    for (const auto& a : corpus) {
        if (!ids.insert(a.id).second) {
            report.issues.push_back({"duplicate_id", "article id repeated: " + a.id});
        }
        if (a.timestamp < 0) {
            report.issues.push_back({"negative_timestamp",
                                     "article " + a.id + " has timestamp " +
                                         std::to_string(a.timestamp)});
        }
    }
    for (const auto& s : scenarios) {
        for (const auto& ref : s.relevant_article_ids) {
            if (ids.find(ref) == ids.end()) {
                report.issues.push_back({"dangling_reference",
                                         "scenario " + s.id + " references missing article " + ref});
            }
        }
        if (s.relevant_article_ids.empty()) {
            report.issues.push_back({"empty_relevant_set",
                                     "scenario " + s.id + " lists no relevant articles"});
        }
        if (static_cast<int>(s.sub_events.size()) < s.metrics.lateral_measure) {
            report.issues.push_back({"chain_shorter_than_lateral_measure",
                                     "scenario " + s.id + " has " +
                                         std::to_string(s.sub_events.size()) + " sub-events for L=" +
                                         std::to_string(s.metrics.lateral_measure)});
        }
    }
    return report;
}

std::vector<Batch> batch_stream(std::vector<Article> corpus, int batch_size) {
    if (batch_size < 1) throw ContractError("batch_size must be >= 1");
    std::sort(corpus.begin(), corpus.end(), [](const Article& a, const Article& b) {
        if (a.timestamp != b.timestamp) return a.timestamp < b.timestamp;
        return a.id < b.id;
    });
    std::vector<Batch> batches;
    for (std::size_t offset = 0; offset < corpus.size(); offset += static_cast<std::size_t>(batch_size)) {
        Batch batch;
        batch.index = static_cast<long long>(batches.size());
        std::size_t end = std::min(corpus.size(), offset + static_cast<std::size_t>(batch_size));
        for (std::size_t i = offset; i < end; ++i) {
            Article a = std::move(corpus[i]);
            a.timestamp = batch.index;  // batch-granular time
            batch.articles.push_back(std::move(a));
        }
        batches.push_back(std::move(batch));
    }
    return batches;
}

namespace {

json article_to_json(const Article& a) {
    json j{{"id", a.id}, {"title", a.title}, {"body", a.body}, {"timestamp", a.timestamp}};
    if (!a.scenario_id.empty()) j["scenario_id"] = a.scenario_id;
    if (!a.perspective.empty()) j["perspective"] = a.perspective;
    return j;
}

Article article_from_json(const json& j) {
    return Article::make(j.at("id").get<std::string>(), j.at("title").get<std::string>(),
                         j.at("body").get<std::string>(), j.at("timestamp").get<long long>(),
                         j.value("scenario_id", std::string{}),
                         j.value("perspective", std::string{}));
}

json scenario_to_json(const Scenario& s) {
    return json{{"id", s.id},
                {"query_id", s.query_id},
                {"description", s.description},
                {"sub_events", s.sub_events},
                {"relevant_article_ids", s.relevant_article_ids},
                {"metrics",
                 json{{"lateral_measure", s.metrics.lateral_measure},
                      {"time_lag", s.metrics.time_lag},
                      {"uncertainty", s.metrics.uncertainty}}}};
}

Scenario scenario_from_json(const json& j) {
    Scenario s;
    s.id = j.at("id").get<std::string>();
    s.query_id = j.at("query_id").get<std::string>();
    s.description = j.at("description").get<std::string>();
    s.sub_events = j.at("sub_events").get<std::vector<std::string>>();
    s.relevant_article_ids = j.at("relevant_article_ids").get<std::vector<std::string>>();
    normalize_references(s.relevant_article_ids);
    const json& m = j.at("metrics");
    s.metrics.lateral_measure = m.at("lateral_measure").get<int>();
    s.metrics.time_lag = m.at("time_lag").get<long long>();
    s.metrics.uncertainty = m.at("uncertainty").get<double>();
    return s;
}

}  // namespace

std::vector<Article> load_corpus(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open corpus file: " + path);
    std::vector<Article> corpus;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        try {
            corpus.push_back(article_from_json(json::parse(line)));
        } catch (const json::exception& e) {
            throw ValidationError("corpus " + path + " line " + std::to_string(line_no) + ": " +
                                  e.what());
        }
    }
    return corpus;
}

void save_corpus(const std::vector<Article>& corpus, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ValidationError("cannot write corpus file: " + path);
    for (const auto& a : corpus) out << article_to_json(a).dump() << '\n';
}

QuerySet load_query_set(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open query/scenario file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ValidationError("query/scenario file " + path + ": " + e.what());
    }
    QuerySet qs;
    for (const auto& q : j.at("queries")) {
        Query query;
        query.id = q.at("id").get<std::string>();
        query.text = q.at("text").get<std::string>();
        if (q.contains("topics")) query.topics = q.at("topics").get<std::vector<std::string>>();
        if (query.text.empty()) throw ValidationError("query " + query.id + " has empty text");
        qs.queries.push_back(std::move(query));
    }
    for (const auto& s : j.at("scenarios")) qs.scenarios.push_back(scenario_from_json(s));
    return qs;
}

void save_query_set(const QuerySet& qs, const std::string& path) {
    json queries = json::array();
    for (const auto& q : qs.queries) {
        json jq{{"id", q.id}, {"text", q.text}};
        if (!q.topics.empty()) jq["topics"] = q.topics;
        queries.push_back(std::move(jq));
    }
    json scenarios = json::array();
    for (const auto& s : qs.scenarios) scenarios.push_back(scenario_to_json(s));

    std::ofstream out(path);
    if (!out) throw ValidationError("cannot write query/scenario file: " + path);
    out << json{{"queries", queries}, {"scenarios", scenarios}}.dump(2) << '\n';
}

}  // namespace salt
