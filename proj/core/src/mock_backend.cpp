#include "salt/mock_backend.hpp"

#include <algorithm>
#include <array>
#include <sstream>

#include "salt/errors.hpp"
#include "salt/prompts.hpp"
#include "salt/text.hpp"

namespace salt {

namespace {

// Vocabulary the scenario template draws causal-chain steps from. Kept free of
// the fixed template words used elsewhere (outlook / linkage / assessment).
constexpr std::array<std::string_view, 48> kBridgeWords = {
    "aluminum",  "arbitration", "basin",       "blockade",   "bottleneck", "cargo",
    "cobalt",    "containers",  "convoy",      "credit",     "currency",   "customs",
    "depot",     "derivatives", "dockworkers", "embargo",    "fertilizer", "freighters",
    "futures",   "glacier",     "gridlock",    "hubs",       "insurers",   "inventory",
    "irrigation","lenders",     "liquidity",   "logjam",     "mills",      "orchards",
    "outage",    "pipelines",   "ports",       "quota",      "rails",      "refinery",
    "reservoir", "sanctions",   "semiconductors", "silos",   "smelters",   "strait",
    "subsidies", "tankers",     "terminals",   "tolls",      "turbines",   "warehouses",
};

std::string topic_words(const std::string& topics_payload) {
    return join(content_tokens(topics_payload), " ");
}

std::vector<std::vector<std::string>> chunk(const std::vector<std::string>& items,
                                            std::size_t size) {
    std::vector<std::vector<std::string>> chunks;
    for (std::size_t i = 0; i < items.size(); i += size) {
        chunks.emplace_back(items.begin() + static_cast<std::ptrdiff_t>(i),
                            items.begin() + static_cast<std::ptrdiff_t>(
                                                std::min(items.size(), i + size)));
    }
    return chunks;
}

}  // namespace

MockBackend::MockBackend(MockConfig config)
    : config_(config), embedder_(config.embed_dim) {}

double MockBackend::confidence_for(const std::string& statement) const {
    return round_to(0.5 + 0.5 * seeded_unit(config_.seed, statement), 2);
}

std::string MockBackend::generate(const GenerationRequest& request) {
    if (request.system_prompt.empty() || request.user_prompt.empty()) {
        throw ContractError("generation request prompts must be non-empty");
    }
    using namespace prompts;
    if (has_tag(request, kTagTopics)) return topics_reply(request);
    if (has_tag(request, kTagBelief)) return belief_reply(request);
    if (has_tag(request, kTagSynthesis)) return synthesis_reply(request);
    if (has_tag(request, kTagHypothesis)) return hypothesis_reply(request);
    if (has_tag(request, kTagBaseline)) return baseline_reply(request);
    if (has_tag(request, kTagScenario)) return scenario_reply(request);
    if (has_tag(request, kTagArticle)) return article_reply(request);
    if (has_tag(request, kTagJudgement)) return judgement_reply(request);
    return "OK: " + join(ranked_keywords(request.user_prompt, 5), " ");
}

std::string MockBackend::topics_reply(const GenerationRequest& request) const {
    std::string query = prompts::payload_line(request.user_prompt, "QUERY:");
    std::vector<std::string> topics = ranked_bigrams(query, 8);
    std::ostringstream out;
    for (std::size_t i = 0; i < topics.size(); ++i) {
        out << (i + 1) << ". " << topics[i] << "\n";
    }
    return out.str();
}

std::string MockBackend::belief_reply(const GenerationRequest& request) const {
    std::string topics = topic_words(prompts::payload_line(request.user_prompt, "TOPICS:"));
    std::string article_id = prompts::payload_line(request.user_prompt, "ARTICLE-ID:");
    std::string article = prompts::payload_line(request.user_prompt, "ARTICLE:");

    std::size_t wanted = 5 * static_cast<std::size_t>(std::max(1, config_.beliefs_per_item));
    std::vector<std::string> keywords = ranked_keywords(article, wanted);
    if (keywords.empty()) keywords.push_back("update");
    auto groups = chunk(keywords, 5);
    if (groups.size() > static_cast<std::size_t>(std::max(1, config_.beliefs_per_item))) {
        groups.resize(static_cast<std::size_t>(std::max(1, config_.beliefs_per_item)));
    }

    std::ostringstream out;
    for (const auto& group : groups) {
        std::string statement = topics + " outlook: " + join(group, " ");
        out << "STATEMENT: " << statement << "\n"
            << "CONFIDENCE: " << confidence_for(statement) << "\n"
            << "REFERENCES: " << article_id << "\n\n";
    }
    return out.str();
}

std::string MockBackend::synthesis_reply(const GenerationRequest& request) const {
    std::string topics = topic_words(prompts::payload_line(request.user_prompt, "TOPICS:"));
    std::vector<std::string> shared = prompts::payload_lines(request.user_prompt, "SHARED:");
    std::string statement =
        topics + " linkage: " + join(ranked_keywords(join(shared, " "), 5), " ");
    std::ostringstream out;
    out << "STATEMENT: " << statement << "\n"
        << "CONFIDENCE: " << confidence_for(statement) << "\n";
    return out.str();
}

std::string MockBackend::hypothesis_reply(const GenerationRequest& request) const {
    std::string query = prompts::payload_line(request.user_prompt, "QUERY:");
    std::vector<std::string> beliefs = prompts::payload_lines(request.user_prompt, "BELIEF:");
    std::string gist = join(ranked_keywords(join(beliefs, " "), 8), " ");
    if (gist.empty()) gist = "none";
    return "HYPOTHESIS: " + join(content_tokens(query), " ") + " assessment: " + gist + "\n";
}

std::string MockBackend::baseline_reply(const GenerationRequest& request) const {
    std::string query = prompts::payload_line(request.user_prompt, "QUERY:");
    std::string previous = prompts::payload_line(request.user_prompt, "PREVIOUS:");
    std::vector<std::string> ids = prompts::payload_lines(request.user_prompt, "ARTICLE-ID:");
    std::vector<std::string> texts = prompts::payload_lines(request.user_prompt, "ARTICLE:");

    std::vector<std::string> cited;
    std::string cited_text;
    if (!query.empty()) {
        EmbeddingVector query_vec;
        bool have_query_vec = false;
        try {
            query_vec = embedder_.embed(query);
            have_query_vec = true;
        } catch (const ZeroInformationError&) {
        }
        for (std::size_t i = 0; i < ids.size() && i < texts.size(); ++i) {
            if (!have_query_vec) break;
            try {
                if (cosine(embedder_.embed(texts[i]), query_vec) >= config_.citation_threshold) {
                    cited.push_back(ids[i]);
                    cited_text += texts[i] + " ";
                }
            } catch (const ZeroInformationError&) {
            }
        }
    }

    std::string gist = join(ranked_keywords(cited_text + previous, 8), " ");
    if (gist.empty()) gist = "no current developments";
    std::ostringstream out;
    out << "HYPOTHESIS: " << join(content_tokens(query), " ") << " assessment: " << gist << "\n"
        << "REFERENCES: " << join(cited, ", ") << "\n";
    return out.str();
}

std::string MockBackend::scenario_reply(const GenerationRequest& request) const {
    std::string query = prompts::payload_line(request.user_prompt, "QUERY:");
    std::string ordinal = prompts::payload_line(request.user_prompt, "ORDINAL:");

    std::uint64_t h = fnv1a64(to_hex(config_.seed) + "|scenario|" + query + "|" + ordinal);
    Rng rng(h);

    std::size_t steps = 3 + static_cast<std::size_t>(rng.below(3));  // 3..5 sub-events
    std::vector<std::string> bridges;
    std::size_t start = static_cast<std::size_t>(rng.below(kBridgeWords.size()));
    std::size_t stride = 1 + static_cast<std::size_t>(rng.below(7));
    for (std::size_t i = 0; i <= steps; ++i) {
        bridges.emplace_back(kBridgeWords[(start + i * stride) % kBridgeWords.size()]);
    }
    std::vector<std::string> query_words = ranked_keywords(query, 4);

    std::vector<std::string> sub_events;
    for (std::size_t j = 0; j < steps; ++j) {
        std::string step = bridges[j] + " " + bridges[j + 1];
        // The back half of the chain carries the query's own vocabulary; the
        // trigger end stays lateral to it.
        if (!query_words.empty() && j >= steps / 2) {
            step += " " + query_words[j % query_words.size()];
            step += " " + query_words[(j + 1) % query_words.size()];
        }
        sub_events.push_back(step);
    }

    std::ostringstream out;
    out << "DESCRIPTION: " << sub_events.front() << " escalating toward " << sub_events.back()
        << "\n";
    for (const auto& step : sub_events) out << "SUB-EVENT: " << step << "\n";
    out << "UNCERTAINTY: " << round_to(seeded_unit(config_.seed, "uncertainty|" + query + "|" + ordinal), 1)
        << "\n";
    out << "TIMESPAN: " << rng.below(22) << "\n";
    return out.str();
}

namespace {

// Neutral reportage filler for synthetic bodies; disjoint from kBridgeWords
// and from the fixed template words (outlook / linkage / assessment / bulletin).
constexpr std::array<std::string_view, 40> kFillerWords = {
    "according",  "added",     "agency",    "analysts",  "announced", "briefing",
    "bureau",     "cited",     "committee", "confirmed", "continued", "coverage",
    "described",  "details",   "estimates", "evening",   "expected",  "figures",
    "following",  "latest",    "measures",  "meeting",   "morning",   "noted",
    "observers",  "officials", "plans",     "published", "quarter",   "regional",
    "remarks",    "reported",  "responses", "sources",   "statement", "summary",
    "survey",     "talks",     "today",     "update",
};

}  // namespace

std::string MockBackend::article_reply(const GenerationRequest& request) const {
    std::string scenario = prompts::payload_line(request.user_prompt, "SCENARIO:");
    std::string sub_event = prompts::payload_line(request.user_prompt, "SUB-EVENT:");
    std::string perspective = prompts::payload_line(request.user_prompt, "PERSPECTIVE:");
    std::string serial = prompts::payload_line(request.user_prompt, "SERIAL:");
    int target = 200;
    try {
        target = std::clamp(std::stoi(prompts::payload_line(request.user_prompt, "TARGET-WORDS:")),
                            1, 100000);
    } catch (...) {
    }

    std::vector<std::string> topical = content_tokens(sub_event);
    if (topical.empty()) topical.push_back("update");
    Rng rng(fnv1a64(to_hex(config_.seed) + "|article|" + scenario + "|" + sub_event + "|" +
                    perspective + "|" + serial));

    // four topical words out of every five keeps the bag-of-words signal strong
    std::vector<std::string> words;
    words.reserve(static_cast<std::size_t>(target));
    std::size_t cursor = 0;
    for (int w = 0; w < target; ++w) {
        if (w % 5 == 4) {
            words.emplace_back(kFillerWords[rng.below(kFillerWords.size())]);
        } else {
            words.push_back(topical[cursor++ % topical.size()]);
        }
    }

    std::ostringstream out;
    out << "TITLE: " << sub_event << " bulletin " << serial << "\n"
        << "BODY: " << join(words, " ") << "\n";
    return out.str();
}

std::string MockBackend::judgement_reply(const GenerationRequest& request) const {
    std::string sub_event = prompts::payload_line(request.user_prompt, "SUB-EVENT:");
    std::string hypothesis = prompts::payload_line(request.user_prompt, "HYPOTHESIS:");
    std::vector<std::string> needed = content_tokens(sub_event);
    std::sort(needed.begin(), needed.end());
    needed.erase(std::unique(needed.begin(), needed.end()), needed.end());
    if (needed.empty()) return "NO";
    std::vector<std::string> have = content_tokens(hypothesis);
    std::sort(have.begin(), have.end());
    std::size_t hit = 0;
    for (const auto& w : needed) {
        if (std::binary_search(have.begin(), have.end(), w)) ++hit;
    }
    double coverage = static_cast<double>(hit) / static_cast<double>(needed.size());
    return coverage >= 0.6 ? "YES" : "NO";
}

}  // namespace salt
