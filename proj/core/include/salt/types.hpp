#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace salt {

// A single stream item. Timestamps are integer time indices: datagen writes
// day indices, batch_stream rewrites them to batch indices before the engine
// sees them. word_count is always recomputed from body, never read from disk.
struct Article {
    std::string id;
    std::string title;
    std::string body;
    long long timestamp = 0;
    std::string scenario_id;   // empty = none
    std::string perspective;   // empty = none
    int word_count = 0;

    static Article make(std::string id, std::string title, std::string body,
                        long long timestamp, std::string scenario_id = "",
                        std::string perspective = "");
};

struct Batch {
    long long index = 0;
    std::vector<Article> articles;
};

struct Query {
    std::string id;
    std::string text;
    std::vector<std::string> topics;  // filled by the network module
};

// The (statement, confidence, timestamp, references) tuple an agent holds and
// shares, plus provenance: who produced it and how many synthesis hops it is
// from raw articles (0 = generated directly from an item).
struct BeliefStatement {
    std::string statement;
    double confidence = 0.5;
    long long timestamp = 0;
    std::vector<std::string> references;  // sorted, deduplicated article ids
    std::string origin_agent;
    int hop_count = 0;
    std::string id;  // stable digest of the fields above

    // Validates confidence range, hop bounds and the hop-0 reference rule,
    // sorts/dedups references and assigns the digest id.
    static BeliefStatement make(std::string statement, double confidence,
                                long long timestamp, std::vector<std::string> references,
                                std::string origin_agent, int hop_count);
};

struct Hypothesis {
    std::string query_id;
    std::string text;
    std::vector<std::string> references;          // sorted, deduplicated
    long long timestamp = 0;                      // batch index
    std::vector<std::string> supporting_beliefs;  // belief ids; empty for single-agent systems
};

// Lateral measure L, time lag T (day indices), outcome uncertainty U.
struct ComplexityMetrics {
    int lateral_measure = 1;   // [1, 7]
    long long time_lag = 0;    // >= 0
    double uncertainty = 0.0;  // [0, 1]
};

struct Scenario {
    std::string id;
    std::string query_id;
    std::string description;
    std::vector<std::string> sub_events;  // the causal chain, in order
    std::vector<std::string> relevant_article_ids;  // sorted, deduplicated
    ComplexityMetrics metrics;
};

struct ValidationIssue {
    std::string kind;    // duplicate_id | dangling_reference | negative_timestamp | ...
    std::string detail;
};

struct ValidationReport {
    std::vector<ValidationIssue> issues;
    bool ok() const { return issues.empty(); }
};

// Deduplicate + sort in place; the normal form for every reference list.
void normalize_references(std::vector<std::string>& refs);

int count_words(std::string_view body);

}  // namespace salt
