#include "salt/config.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

#include "salt/errors.hpp"
#include "salt/text.hpp"

namespace salt {

using nlohmann::json;

namespace {

template <typename T>
void read_if(const json& j, const char* key, T& into) {
    if (j.contains(key)) into = j.at(key).get<T>();
}

}  // namespace

RunConfig parse_run_config(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception& e) {
        throw ValidationError(std::string("malformed config: ") + e.what());
    }

    RunConfig c;
    read_if(j, "relevance_threshold", c.engine.relevance_threshold);
    read_if(j, "propagation_threshold", c.engine.propagation_threshold);
    read_if(j, "max_hops", c.engine.max_hops);
    read_if(j, "top_k_share", c.engine.top_k_share);
    read_if(j, "capacity", c.engine.capacity);
    read_if(j, "batch_size", c.engine.batch_size);
    read_if(j, "aging_half_life", c.engine.aging_half_life);
    read_if(j, "hypothesis_top_k", c.engine.hypothesis_top_k);

    if (j.contains("network")) {
        const json& n = j.at("network");
        read_if(n, "alpha", c.network.alpha);
        read_if(n, "beta", c.network.beta);
        read_if(n, "active_threshold", c.network.active_threshold);
        read_if(n, "topic_k", c.network.topic_k);
    }
    if (j.contains("embedding")) {
        const json& e = j.at("embedding");
        read_if(e, "dim", c.embed_dim);
    }
    if (j.contains("eval")) {
        const json& e = j.at("eval");
        read_if(e, "matcher_threshold", c.matcher_threshold);
    }
    if (j.contains("baseline")) {
        const json& b = j.at("baseline");
        read_if(b, "batch_size", c.baseline.batch_size);
        read_if(b, "include_previous", c.baseline.include_previous);
        read_if(b, "window_batches", c.baseline.window_batches);
        read_if(b, "excerpt_words", c.baseline.excerpt_words);
        if (b.contains("start_index")) c.baseline.start_index = b.at("start_index").get<long long>();
        if (b.contains("end_index")) c.baseline.end_index = b.at("end_index").get<long long>();
    }
    if (j.contains("mock")) {
        const json& m = j.at("mock");
        read_if(m, "beliefs_per_item", c.mock.beliefs_per_item);
        read_if(m, "citation_threshold", c.mock.citation_threshold);
    }
    if (j.contains("http")) {
        const json& h = j.at("http");
        read_if(h, "base_url", c.http.base_url);
        read_if(h, "model", c.http.model);
        read_if(h, "chat_path", c.http.chat_path);
        read_if(h, "max_retries", c.http.max_retries);
        read_if(h, "timeout_seconds", c.http.timeout_seconds);
        read_if(h, "max_in_flight", c.http.max_in_flight);
        read_if(h, "retry_backoff_ms", c.http.retry_backoff_ms);
    }

    c.engine.validate();
    if (c.network.alpha <= 0.0) throw ValidationError("network.alpha must be positive");
    if (c.network.beta < 0.0 || c.network.beta > 1.0) {
        throw ValidationError("network.beta out of [0,1]");
    }
    if (c.network.active_threshold < 0.0 || c.network.active_threshold > 1.0) {
        throw ValidationError("network.active_threshold out of [0,1]");
    }
    if (c.network.topic_k < 1) throw ValidationError("network.topic_k must be >= 1");
    if (c.embed_dim == 0) throw ValidationError("embedding.dim must be positive");
    c.baseline.validate();
    return c;
}

RunConfig load_run_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open config file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_run_config(buffer.str());
}

std::string config_to_json(const RunConfig& c) {
    json j{
        {"relevance_threshold", c.engine.relevance_threshold},
        {"propagation_threshold", c.engine.propagation_threshold},
        {"max_hops", c.engine.max_hops},
        {"top_k_share", c.engine.top_k_share},
        {"capacity", c.engine.capacity},
        {"batch_size", c.engine.batch_size},
        {"aging_half_life", c.engine.aging_half_life},
        {"hypothesis_top_k", c.engine.hypothesis_top_k},
        {"network",
         json{{"alpha", c.network.alpha},
              {"beta", c.network.beta},
              {"active_threshold", c.network.active_threshold},
              {"topic_k", c.network.topic_k}}},
        {"embedding", json{{"dim", c.embed_dim}}},
        {"eval", json{{"matcher_threshold", c.matcher_threshold}}},
        {"baseline",
         json{{"batch_size", c.baseline.batch_size},
              {"include_previous", c.baseline.include_previous},
              {"window_batches", c.baseline.window_batches},
              {"excerpt_words", c.baseline.excerpt_words}}},
        {"mock",
         json{{"beliefs_per_item", c.mock.beliefs_per_item},
              {"citation_threshold", c.mock.citation_threshold}}},
    };
    return j.dump();
}

std::string config_hash(const RunConfig& config) {
    return to_hex(fnv1a64(config_to_json(config)));
}

}  // namespace salt
