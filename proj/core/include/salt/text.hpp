#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace salt {

// 64-bit FNV-1a. Used for token bucketing, belief ids and seeded pseudo-scores;
// must stay byte-stable across platforms, so std::hash is not an option.
constexpr std::uint64_t fnv1a64(std::string_view s) noexcept {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string to_hex(std::uint64_t v);

bool is_stopword(std::string_view word);

// Lowercased alphanumeric runs, in order of appearance.
std::vector<std::string> tokenize(std::string_view text);

// tokenize() minus stopwords.
std::vector<std::string> content_tokens(std::string_view text);

// Content tokens ranked by frequency (descending), ties alphabetical. Up to k.
std::vector<std::string> ranked_keywords(std::string_view text, std::size_t k);

// Adjacent content-token pairs ("w1 w2"), same ranking rule as ranked_keywords.
// A text with a single content token yields that token alone.
std::vector<std::string> ranked_bigrams(std::string_view text, std::size_t k);

std::string join(const std::vector<std::string>& parts, std::string_view sep);
std::string lowercase(std::string_view s);
std::string slugify(std::string_view s);  // lowercase, [a-z0-9] runs joined by '-'

// Hash of (seed, text) mapped to [0,1). Stable across runs and platforms.
double seeded_unit(std::uint64_t seed, std::string_view text);

double round_to(double v, int decimals);

// splitmix64. Self-contained so values frozen in tests do not depend on the
// standard library's distribution implementations.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // [0, n), n > 0
    std::uint64_t below(std::uint64_t n) { return next_u64() % n; }

    // [lo, hi] inclusive
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
        return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Independent deterministic substream for a named purpose.
    Rng fork(std::string_view label) const {
        return Rng(state_ ^ fnv1a64(label));
    }

  private:
    std::uint64_t state_;
};

}  // namespace salt
