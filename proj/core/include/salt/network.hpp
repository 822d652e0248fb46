#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "salt/backend.hpp"
#include "salt/embedder.hpp"
#include "salt/types.hpp"

namespace salt {

struct NetworkConfig {
    double alpha = 1.0;             // Eq-style weight coefficient
    double beta = 0.2;              // activity EMA step
    double active_threshold = 0.0;  // static-weight gate for propagation
    int topic_k = 4;                // research areas requested per query
    // optional per-edge alpha overrides, keyed by unordered agent-id pair
    std::map<std::pair<std::string, std::string>, double> alpha_overrides;
};

// A topic specialist. The representation is always recomputable as the
// embedding of the topics joined by single spaces.
struct Agent {
    std::string id;
    std::vector<std::string> topics;
    EmbeddingVector representation;
};

// Dedups topics case-insensitively (first casing wins), embeds them, and
// derives the id from the topics when none is given.
Agent make_agent(std::vector<std::string> topics, const Embedder& embedder,
                 std::string id = {});

// alpha * cosine of the two representations, clamped to [0, alpha].
double edge_weight(const Agent& a, const Agent& b, double alpha);

// Static weights come from topic similarity at build time and never change;
// what evolves is a per-edge activity score (EMA of endpoint co-relevance).
// Effective propagation weight = static weight * activity.
class AgentGraph {
  public:
    static AgentGraph build(std::vector<Agent> agents, const NetworkConfig& config);

    const std::vector<Agent>& agents() const { return agents_; }
    const Agent& agent(const std::string& id) const;
    bool has_agent(const std::string& id) const;

    double weight(const std::string& a, const std::string& b) const;
    double activity(const std::string& a, const std::string& b) const;
    double effective_weight(const std::string& a, const std::string& b) const;

    double alpha() const { return config_.alpha; }
    double active_threshold() const { return config_.active_threshold; }
    double beta() const { return config_.beta; }

    // Other agents whose static weight passes the active threshold, sorted by id.
    std::vector<std::string> propagation_neighbors(const std::string& id) const;

    // One call per engine batch: EMA update of edge activities for every pair
    // whose endpoints were both scored. Static weights are untouched.
    void update_topology(const std::map<std::string, double>& relevance_scores);

    struct EdgeSnapshot {
        std::string a, b;
        double weight;
        double activity;
    };
    std::vector<EdgeSnapshot> edge_snapshots() const;

  private:
    static std::pair<std::string, std::string> edge_key(const std::string& a,
                                                        const std::string& b);

    std::vector<Agent> agents_;  // sorted by id
    std::map<std::string, std::size_t> index_;
    std::map<std::pair<std::string, std::string>, double> weights_;
    std::map<std::pair<std::string, std::string>, double> activities_;
    NetworkConfig config_;
};

// Asks the backend for up to config.topic_k research areas per query; replies
// are parsed tolerantly (numbered lists preferred, bullets accepted). An
// unparseable reply falls back to keyword extraction from the query text.
std::map<std::string, std::vector<std::string>> extract_topics(const std::vector<Query>& queries,
                                                               TextBackend& backend,
                                                               const NetworkConfig& config);

// One agent per unique topic (case-insensitive union across queries), complete
// weighted graph, empty belief stores. Fills each query's topics field.
AgentGraph initialize_network(std::vector<Query>& queries, TextBackend& backend,
                              const NetworkConfig& config, const Embedder& embedder);

}  // namespace salt
