#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "salt/backend.hpp"
#include "salt/types.hpp"

namespace salt::prompts {

// Task tags carried on the first line of every system prompt. Scripted
// backends dispatch on them; live models read them as plain instructions.
inline constexpr std::string_view kTagTopics = "task: topic-extraction";
inline constexpr std::string_view kTagBelief = "task: belief-generation";
inline constexpr std::string_view kTagSynthesis = "task: belief-synthesis";
inline constexpr std::string_view kTagHypothesis = "task: hypothesis";
inline constexpr std::string_view kTagBaseline = "task: baseline-hypothesis";
inline constexpr std::string_view kTagScenario = "task: scenario-generation";
inline constexpr std::string_view kTagArticle = "task: article-generation";
inline constexpr std::string_view kTagJudgement = "task: subevent-judgement";

// ---- request builders ----

GenerationRequest topic_extraction(const Query& query, int k);
GenerationRequest belief_generation(const std::vector<std::string>& agent_topics,
                                    const Article& item);
GenerationRequest belief_synthesis(const std::vector<std::string>& agent_topics,
                                   const std::vector<BeliefStatement>& shared);
GenerationRequest hypothesis_synthesis(const Query& query,
                                       const std::vector<BeliefStatement>& beliefs);
// previous == nullptr when there is no prior hypothesis to carry forward.
GenerationRequest baseline_hypothesis(const Query& query, const std::vector<Article>& batch,
                                      const std::string* previous, int excerpt_words);
GenerationRequest scenario_generation(const Query& query, int ordinal, int total);
GenerationRequest article_generation(const std::string& scenario_id, const std::string& sub_event,
                                     const std::string& perspective, int target_words,
                                     int serial);
GenerationRequest subevent_judgement(const std::string& sub_event,
                                     const std::string& hypothesis_text);

// ---- lenient reply parsers ----

// Numbered entries preferred ("1. x", "2) y"); bullet lines as fallback.
// Markdown bold and trailing punctuation are stripped.
std::vector<std::string> parse_listed_items(const std::string& reply);

struct BeliefBlock {
    std::string statement;
    std::optional<double> confidence;       // absent -> caller applies fallback
    std::vector<std::string> references;    // absent -> caller applies fallback
};
// Blocks of STATEMENT / CONFIDENCE / REFERENCES lines. A reply with no
// STATEMENT marker at all degrades to one block whose statement is the reply.
std::vector<BeliefBlock> parse_belief_blocks(const std::string& reply);

struct HypothesisReply {
    std::string text;
    std::vector<std::string> references;
    bool references_present = false;  // line seen at all; callers fall back only when false
};
HypothesisReply parse_hypothesis(const std::string& reply);

struct ScenarioReply {
    std::string description;
    std::vector<std::string> sub_events;
    std::optional<double> uncertainty;
    std::optional<long long> timespan_days;
};
ScenarioReply parse_scenario(const std::string& reply);

struct ArticleReply {
    std::string title;
    std::string body;
};
ArticleReply parse_article(const std::string& reply);

bool parse_yes_no(const std::string& reply);

// ---- prompt payload helpers (used by scripted backends) ----

// Value of the first line starting with marker, trimmed; empty if absent.
std::string payload_line(const std::string& prompt, std::string_view marker);
// Values of every line starting with marker, in order.
std::vector<std::string> payload_lines(const std::string& prompt, std::string_view marker);
bool has_tag(const GenerationRequest& request, std::string_view tag);

std::string trim(std::string_view s);

}  // namespace salt::prompts
