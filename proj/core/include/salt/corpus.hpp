#pragma once

#include <string>
#include <vector>

#include "salt/types.hpp"

namespace salt {

// Queries plus their ground-truth scenarios; the contents of the scenario file.
struct QuerySet {
    std::vector<Query> queries;
    std::vector<Scenario> scenarios;

    std::vector<const Scenario*> scenarios_for(const std::string& query_id) const;
};

// Reporting only, never throws: duplicate ids, dangling scenario references,
// negative timestamps, scenario chains shorter than their lateral measure,
// scenarios with no relevant articles.
ValidationReport validate_corpus(const std::vector<Article>& corpus,
                                 const std::vector<Scenario>& scenarios);

// Sorts by (timestamp, id), partitions into consecutive batches of at most
// batch_size, and rewrites each article's timestamp to its batch index so the
// engine sees batch-granular time. Empty corpus -> empty list.
std::vector<Batch> batch_stream(std::vector<Article> corpus, int batch_size);

// Newline-delimited JSON, one article per line, keys
// {id, title, body, timestamp, scenario_id?, perspective?}. word_count is
// recomputed on load.
std::vector<Article> load_corpus(const std::string& path);
void save_corpus(const std::vector<Article>& corpus, const std::string& path);

// Single JSON document {queries: [...], scenarios: [...]}.
QuerySet load_query_set(const std::string& path);
void save_query_set(const QuerySet& qs, const std::string& path);

}  // namespace salt
