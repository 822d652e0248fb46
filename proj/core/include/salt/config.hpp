#pragma once

#include <string>

#include "salt/baseline.hpp"
#include "salt/engine.hpp"
#include "salt/http_backend.hpp"
#include "salt/mock_backend.hpp"
#include "salt/network.hpp"

namespace salt {

// Everything a run needs, resolvable from one JSON document. EngineConfig
// field names sit at the top level; network/embedding/baseline/mock/http
// settings live in optional sections of the same names.
struct RunConfig {
    EngineConfig engine;
    NetworkConfig network;
    std::size_t embed_dim = Embedder::kDefaultDim;
    double matcher_threshold = 0.6;
    BaselineParams baseline;
    MockConfig mock;
    HttpBackendConfig http;
};

RunConfig load_run_config(const std::string& path);
RunConfig parse_run_config(const std::string& json_text);

// Canonical serialization (sorted keys); the hash recorded in run metadata
// and evaluation reports.
std::string config_to_json(const RunConfig& config);
std::string config_hash(const RunConfig& config);

}  // namespace salt
