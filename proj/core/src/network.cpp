#include "salt/network.hpp"

#include <algorithm>
#include <set>

#include "salt/errors.hpp"
#include "salt/logging.hpp"
#include "salt/prompts.hpp"
#include "salt/text.hpp"

namespace salt {

namespace {

std::vector<std::string> dedup_case_insensitive(const std::vector<std::string>& topics) {
    std::vector<std::string> out;
    std::set<std::string> seen;
    for (const auto& t : topics) {
        std::string trimmed = prompts::trim(t);
        if (trimmed.empty()) continue;
        if (seen.insert(lowercase(trimmed)).second) out.push_back(trimmed);
    }
    return out;
}

}  // namespace

Agent make_agent(std::vector<std::string> topics, const Embedder& embedder, std::string id) {
    std::vector<std::string> unique = dedup_case_insensitive(topics);
    if (unique.empty()) throw ContractError("agent requires at least one topic");
    Agent agent;
    agent.topics = std::move(unique);
    agent.id = id.empty() ? slugify(join(agent.topics, " ")) : std::move(id);
    agent.representation = embedder.embed(join(agent.topics, " "));
    return agent;
}

double edge_weight(const Agent& a, const Agent& b, double alpha) {
    if (&a == &b || a.id == b.id) throw ContractError("edge_weight requires distinct agents");
    double w = alpha * cosine(a.representation, b.representation);
    return std::clamp(w, 0.0, alpha);
}

std::pair<std::string, std::string> AgentGraph::edge_key(const std::string& a,
                                                         const std::string& b) {
    return a < b ? std::make_pair(a, b) : std::make_pair(b, a);
}

AgentGraph AgentGraph::build(std::vector<Agent> agents, const NetworkConfig& config) {
    if (agents.empty()) throw ContractError("graph requires at least one agent");
    AgentGraph g;
    g.config_ = config;
    std::sort(agents.begin(), agents.end(),
              [](const Agent& a, const Agent& b) { return a.id < b.id; });
    for (std::size_t i = 0; i + 1 < agents.size(); ++i) {
        if (agents[i].id == agents[i + 1].id) {
            throw ContractError("duplicate agent id: " + agents[i].id);
        }
    }
    g.agents_ = std::move(agents);
    for (std::size_t i = 0; i < g.agents_.size(); ++i) g.index_[g.agents_[i].id] = i;

    for (std::size_t i = 0; i < g.agents_.size(); ++i) {
        for (std::size_t j = i + 1; j < g.agents_.size(); ++j) {
            auto key = edge_key(g.agents_[i].id, g.agents_[j].id);
            double alpha = config.alpha;
            if (auto it = config.alpha_overrides.find(key); it != config.alpha_overrides.end()) {
                alpha = it->second;
            }
            g.weights_[key] = edge_weight(g.agents_[i], g.agents_[j], alpha);
            g.activities_[key] = 1.0;
        }
    }
    return g;
}

const Agent& AgentGraph::agent(const std::string& id) const {
    auto it = index_.find(id);
    if (it == index_.end()) throw ContractError("unknown agent id: " + id);
    return agents_[it->second];
}

bool AgentGraph::has_agent(const std::string& id) const { return index_.count(id) > 0; }

double AgentGraph::weight(const std::string& a, const std::string& b) const {
    auto it = weights_.find(edge_key(a, b));
    if (it == weights_.end()) throw ContractError("unknown edge: " + a + " -- " + b);
    return it->second;
}

double AgentGraph::activity(const std::string& a, const std::string& b) const {
    return activities_.at(edge_key(a, b));
}

double AgentGraph::effective_weight(const std::string& a, const std::string& b) const {
    return weight(a, b) * activity(a, b);
}

std::vector<std::string> AgentGraph::propagation_neighbors(const std::string& id) const {
    std::vector<std::string> out;
    for (const auto& other : agents_) {
        if (other.id == id) continue;
        if (weight(id, other.id) >= config_.active_threshold) out.push_back(other.id);
    }
    return out;
}

void AgentGraph::update_topology(const std::map<std::string, double>& relevance_scores) {
    if (relevance_scores.empty()) return;
    for (auto& [key, activity] : activities_) {
        auto a = relevance_scores.find(key.first);
        auto b = relevance_scores.find(key.second);
        if (a == relevance_scores.end() || b == relevance_scores.end()) continue;
        double co_relevance = std::min(a->second, b->second);
        activity = (1.0 - config_.beta) * activity + config_.beta * co_relevance;
    }
}

std::vector<AgentGraph::EdgeSnapshot> AgentGraph::edge_snapshots() const {
    std::vector<EdgeSnapshot> out;
    out.reserve(weights_.size());
    for (const auto& [key, w] : weights_) {
        out.push_back({key.first, key.second, w, activities_.at(key)});
    }
    return out;
}

std::map<std::string, std::vector<std::string>> extract_topics(const std::vector<Query>& queries,
                                                               TextBackend& backend,
                                                               const NetworkConfig& config) {
    if (queries.empty()) throw ContractError("extract_topics requires at least one query");
    std::map<std::string, std::vector<std::string>> out;
    for (const auto& query : queries) {
        std::string reply = backend.generate(prompts::topic_extraction(query, config.topic_k));
        std::vector<std::string> topics = prompts::parse_listed_items(reply);
        if (topics.empty()) {
            log_warn("unparseable topic reply for query " + query.id +
                     ", falling back to keyword extraction");
            topics = ranked_keywords(query.text, static_cast<std::size_t>(config.topic_k));
        }
        topics = dedup_case_insensitive(topics);
        if (topics.size() > static_cast<std::size_t>(config.topic_k)) {
            topics.resize(static_cast<std::size_t>(config.topic_k));
        }
        out[query.id] = std::move(topics);
    }
    return out;
}

AgentGraph initialize_network(std::vector<Query>& queries, TextBackend& backend,
                              const NetworkConfig& config, const Embedder& embedder) {
    auto per_query = extract_topics(queries, backend, config);

    std::vector<std::string> all_topics;
    for (auto& query : queries) {
        auto it = per_query.find(query.id);
        if (it != per_query.end()) {
            query.topics = it->second;
            all_topics.insert(all_topics.end(), it->second.begin(), it->second.end());
        }
    }
    std::vector<std::string> unique = dedup_case_insensitive(all_topics);
    if (unique.empty()) throw ValidationError("no topics extracted from any query");

    std::vector<Agent> agents;
    agents.reserve(unique.size());
    for (const auto& topic : unique) {
        agents.push_back(make_agent({topic}, embedder));
    }
    return AgentGraph::build(std::move(agents), config);
}

}  // namespace salt
