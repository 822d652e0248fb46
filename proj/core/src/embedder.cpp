#include "salt/embedder.hpp"

#include <algorithm>
#include <cmath>

#include "salt/errors.hpp"
#include "salt/text.hpp"

namespace salt {

double cosine(const EmbeddingVector& a, const EmbeddingVector& b) {
    if (a.dim() != b.dim()) {
        throw ContractError("cosine: dimension mismatch " + std::to_string(a.dim()) + " vs " +
                            std::to_string(b.dim()));
    }
    double dot = 0.0;
    for (std::size_t i = 0; i < a.values.size(); ++i) dot += a.values[i] * b.values[i];
    return std::clamp(dot, -1.0, 1.0);
}

Embedder::Embedder(std::size_t dim) : dim_(dim) {
    if (dim_ == 0) throw ContractError("embedding dimension must be positive");
}

std::size_t Embedder::bucket(std::string_view token) const {
    return static_cast<std::size_t>(fnv1a64(token) % dim_);
}

EmbeddingVector Embedder::embed(std::string_view text) const {
    std::vector<std::string> tokens = content_tokens(text);
    if (tokens.empty()) {
        throw ZeroInformationError("text has no content tokens: \"" + std::string(text) + "\"");
    }
    EmbeddingVector v;
    v.values.assign(dim_, 0.0);
    for (const auto& token : tokens) v.values[bucket(token)] += 1.0;
    double norm = 0.0;
    for (double x : v.values) norm += x * x;
    norm = std::sqrt(norm);
    for (double& x : v.values) x /= norm;
    return v;
}

}  // namespace salt
