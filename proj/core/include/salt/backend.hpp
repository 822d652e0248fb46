#pragma once

#include <string>

namespace salt {

// Carrier for every generation call in the system. The first line of
// system_prompt is a task tag (see prompts.hpp) so backends that script their
// replies can dispatch on it; live backends just forward the whole prompt.
struct GenerationRequest {
    std::string system_prompt;
    std::string user_prompt;
    int max_tokens = 512;
    double temperature = 0.0;
};

// Every nondeterministic capability flows through this seam. Implementations
// must be safe to call concurrently from multiple workers.
class TextBackend {
  public:
    virtual ~TextBackend() = default;

    // Returns non-empty text. Throws BackendError on failure; terminal=true
    // means retries are exhausted and the run should stop.
    virtual std::string generate(const GenerationRequest& request) = 0;

    virtual std::string name() const = 0;
};

}  // namespace salt
