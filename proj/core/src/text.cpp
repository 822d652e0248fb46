#include "salt/text.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <map>
#include <unordered_set>

namespace salt {

namespace {

const std::unordered_set<std::string_view>& stopword_set() {
    static const std::unordered_set<std::string_view> kStopwords = {
        "a",       "about",  "after",   "again",  "all",    "also",   "an",     "and",
        "any",     "are",    "as",      "at",     "be",     "been",   "before", "being",
        "between", "both",   "but",     "by",     "can",    "could",  "did",    "do",
        "does",    "down",   "during",  "each",   "few",    "for",    "from",   "further",
        "had",     "has",    "have",    "having", "he",     "her",    "here",   "hers",
        "him",     "his",    "how",     "i",      "if",     "in",     "into",   "is",
        "it",      "its",    "just",    "me",     "more",   "most",   "my",     "no",
        "nor",     "not",    "now",     "of",     "off",    "on",     "once",   "only",
        "or",      "other",  "our",     "out",    "over",   "own",    "s",      "same",
        "she",     "should", "so",      "some",   "such",   "t",      "than",   "that",
        "the",     "their",  "them",    "then",   "there",  "these",  "they",   "this",
        "those",   "through","to",      "too",    "under",  "until",  "up",     "very",
        "was",     "we",     "were",    "what",   "when",   "where",  "which",  "while",
        "who",     "whom",   "why",     "will",   "with",   "would",  "you",    "your",
    };
    return kStopwords;
}

// Shared ranking rule: frequency descending, then alphabetical.
std::vector<std::string> rank_by_frequency(const std::vector<std::string>& items, std::size_t k) {
    std::map<std::string, std::size_t> counts;
    for (const auto& item : items) ++counts[item];
    std::vector<std::pair<std::string, std::size_t>> ranked(counts.begin(), counts.end());
    std::stable_sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    std::vector<std::string> out;
    out.reserve(std::min(k, ranked.size()));
    for (const auto& [item, _] : ranked) {
        if (out.size() == k) break;
        out.push_back(item);
    }
    return out;
}

}  // namespace

std::string to_hex(std::uint64_t v) {
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = digits[v & 0xf];
        v >>= 4;
    }
    return out;
}

bool is_stopword(std::string_view word) {
    return stopword_set().count(word) > 0;
}

std::vector<std::string> tokenize(std::string_view text) {
    std::vector<std::string> tokens;
    std::string current;
    for (char raw : text) {
        unsigned char c = static_cast<unsigned char>(raw);
        if (std::isalnum(c)) {
            current.push_back(static_cast<char>(std::tolower(c)));
        } else if (!current.empty()) {
            tokens.push_back(std::move(current));
            current.clear();
        }
    }
    if (!current.empty()) tokens.push_back(std::move(current));
    return tokens;
}

std::vector<std::string> content_tokens(std::string_view text) {
    std::vector<std::string> tokens = tokenize(text);
    std::erase_if(tokens, [](const std::string& t) { return is_stopword(t); });
    return tokens;
}

std::vector<std::string> ranked_keywords(std::string_view text, std::size_t k) {
    return rank_by_frequency(content_tokens(text), k);
}

std::vector<std::string> ranked_bigrams(std::string_view text, std::size_t k) {
    std::vector<std::string> tokens = content_tokens(text);
    if (tokens.empty()) return {};
    if (tokens.size() == 1) return {tokens.front()};
    std::vector<std::string> bigrams;
    bigrams.reserve(tokens.size() - 1);
    for (std::size_t i = 0; i + 1 < tokens.size(); ++i) {
        bigrams.push_back(tokens[i] + " " + tokens[i + 1]);
    }
    return rank_by_frequency(bigrams, k);
}

std::string join(const std::vector<std::string>& parts, std::string_view sep) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i > 0) out.append(sep);
        out.append(parts[i]);
    }
    return out;
}

std::string lowercase(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

std::string slugify(std::string_view s) {
    std::vector<std::string> tokens = tokenize(s);
    return join(tokens, "-");
}

double seeded_unit(std::uint64_t seed, std::string_view text) {
    std::string keyed = to_hex(seed);
    keyed.push_back('|');
    keyed.append(text);
    // Top 53 bits so the value is exactly representable.
    return static_cast<double>(fnv1a64(keyed) >> 11) * 0x1.0p-53;
}

double round_to(double v, int decimals) {
    double scale = std::pow(10.0, decimals);
    return std::round(v * scale) / scale;
}

}  // namespace salt
