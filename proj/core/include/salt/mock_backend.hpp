#pragma once

#include <cstdint>
#include <string>

#include "salt/backend.hpp"
#include "salt/embedder.hpp"

namespace salt {

struct MockConfig {
    std::uint64_t seed = 0;
    // How many STATEMENT blocks a belief-generation reply carries (the article
    // must have enough distinct keywords to fill them).
    int beliefs_per_item = 1;
    // An article in a baseline prompt is cited when the cosine between its
    // embedded text and the query payload reaches this value.
    double citation_threshold = 0.15;
    std::size_t embed_dim = Embedder::kDefaultDim;
};

// Template-based scripted backend: a pure function of (request, seed).
// Each call site's task tag selects a response template filled from
// deterministic keyword extraction over the prompt payload; confidences are
// 0.5 + 0.5 * seeded hash of the statement text, rounded to 2 decimals.
class MockBackend final : public TextBackend {
  public:
    explicit MockBackend(MockConfig config = {});

    std::string generate(const GenerationRequest& request) override;
    std::string name() const override { return "mock"; }

    const MockConfig& config() const { return config_; }

  private:
    std::string topics_reply(const GenerationRequest& request) const;
    std::string belief_reply(const GenerationRequest& request) const;
    std::string synthesis_reply(const GenerationRequest& request) const;
    std::string hypothesis_reply(const GenerationRequest& request) const;
    std::string baseline_reply(const GenerationRequest& request) const;
    std::string scenario_reply(const GenerationRequest& request) const;
    std::string article_reply(const GenerationRequest& request) const;
    std::string judgement_reply(const GenerationRequest& request) const;

    double confidence_for(const std::string& statement) const;

    MockConfig config_;
    Embedder embedder_;
};

}  // namespace salt
