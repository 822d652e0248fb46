#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

namespace salt {

// Unit-norm vector of fixed dimension D (one D per run).
struct EmbeddingVector {
    std::vector<double> values;
    std::size_t dim() const { return values.size(); }
};

// Dot product of unit vectors, clamped to [-1, 1] against rounding.
// Throws ContractError on dimension mismatch.
double cosine(const EmbeddingVector& a, const EmbeddingVector& b);

// Deterministic hashed bag-of-words: tokenize, lowercase, drop stopwords,
// FNV-bucket each token into one of D buckets, count, then L2-normalize.
// Same text always maps to the same vector.
class Embedder {
  public:
    static constexpr std::size_t kDefaultDim = 256;

    explicit Embedder(std::size_t dim = kDefaultDim);

    std::size_t dim() const { return dim_; }

    // Throws ZeroInformationError when no content tokens survive; the zero
    // vector is never returned.
    EmbeddingVector embed(std::string_view text) const;

    std::size_t bucket(std::string_view token) const;

  private:
    std::size_t dim_;
};

}  // namespace salt
