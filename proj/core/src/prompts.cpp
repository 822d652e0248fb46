#include "salt/prompts.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "salt/text.hpp"

namespace salt::prompts {

namespace {

std::string flatten(std::string_view text) {
    std::string out(text);
    std::replace(out.begin(), out.end(), '\n', ' ');
    std::replace(out.begin(), out.end(), '\r', ' ');
    return out;
}

std::string excerpt(const std::string& text, int max_words) {
    std::vector<std::string> words;
    std::istringstream in(text);
    std::string w;
    while (static_cast<int>(words.size()) < max_words && in >> w) words.push_back(w);
    return join(words, " ");
}

std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) lines.push_back(line);
    return lines;
}

bool starts_with(std::string_view line, std::string_view prefix) {
    return line.substr(0, prefix.size()) == prefix;
}

std::string strip_decorations(std::string s) {
    // markdown bold and trailing list punctuation
    std::string out;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '*') continue;
        out.push_back(s[i]);
    }
    std::string trimmed = trim(out);
    while (!trimmed.empty() && (trimmed.back() == ':' || trimmed.back() == '.')) {
        trimmed.pop_back();
        trimmed = trim(trimmed);
    }
    return trimmed;
}

// "1. text" / "12) text" -> text
std::optional<std::string> numbered_entry(const std::string& line) {
    std::size_t i = 0;
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t digits = 0;
    while (i + digits < line.size() && std::isdigit(static_cast<unsigned char>(line[i + digits])))
        ++digits;
    if (digits == 0) return std::nullopt;
    std::size_t j = i + digits;
    if (j >= line.size() || (line[j] != '.' && line[j] != ')')) return std::nullopt;
    return strip_decorations(line.substr(j + 1));
}

std::optional<std::string> bullet_entry(const std::string& line) {
    std::size_t i = 0;
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i >= line.size()) return std::nullopt;
    if (line[i] != '-' && line[i] != '*') return std::nullopt;
    return strip_decorations(line.substr(i + 1));
}

std::vector<std::string> split_reference_list(const std::string& value) {
    std::vector<std::string> refs;
    std::string current;
    auto push = [&]() {
        std::string t = trim(current);
        // strip surrounding brackets/quotes from ids like "[article-103]"
        while (!t.empty() && (t.front() == '[' || t.front() == '"' || t.front() == '\'')) t.erase(t.begin());
        while (!t.empty() && (t.back() == ']' || t.back() == '"' || t.back() == '\'')) t.pop_back();
        if (!t.empty()) refs.push_back(t);
        current.clear();
    };
    for (char c : value) {
        if (c == ',' || c == ';' || c == ' ') {
            push();
        } else {
            current.push_back(c);
        }
    }
    push();
    return refs;
}

}  // namespace

std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

bool has_tag(const GenerationRequest& request, std::string_view tag) {
    return starts_with(request.system_prompt, tag);
}

std::string payload_line(const std::string& prompt, std::string_view marker) {
    for (const auto& line : split_lines(prompt)) {
        if (starts_with(line, marker)) return trim(line.substr(marker.size()));
    }
    return {};
}

std::vector<std::string> payload_lines(const std::string& prompt, std::string_view marker) {
    std::vector<std::string> out;
    for (const auto& line : split_lines(prompt)) {
        if (starts_with(line, marker)) out.push_back(trim(line.substr(marker.size())));
    }
    return out;
}

// ---- builders ----

GenerationRequest topic_extraction(const Query& query, int k) {
    GenerationRequest r;
    r.system_prompt = std::string(kTagTopics) +
                      "\nYou decompose monitoring questions into research areas.";
    std::ostringstream user;
    user << "Given the following query construct a numbered list of " << k
         << " areas of research that should be focussed on to answer the query.\n"
         << "AREAS: " << k << "\n"
         << "QUERY: " << flatten(query.text) << "\n";
    r.user_prompt = user.str();
    r.max_tokens = 256;
    return r;
}

GenerationRequest belief_generation(const std::vector<std::string>& agent_topics,
                                    const Article& item) {
    GenerationRequest r;
    r.system_prompt = std::string(kTagBelief) +
                      "\nYou are a topic analyst. From the article, state what you now believe "
                      "about your topics.\nReply with one or more blocks of lines:\n"
                      "STATEMENT: <one sentence>\nCONFIDENCE: <0..1>\nREFERENCES: <article ids>";
    std::ostringstream user;
    user << "TOPICS: " << join(agent_topics, "; ") << "\n"
         << "ARTICLE-ID: " << item.id << "\n"
         << "ARTICLE: " << flatten(item.title) << " " << flatten(item.body) << "\n";
    r.user_prompt = user.str();
    return r;
}

GenerationRequest belief_synthesis(const std::vector<std::string>& agent_topics,
                                   const std::vector<BeliefStatement>& shared) {
    GenerationRequest r;
    r.system_prompt = std::string(kTagSynthesis) +
                      "\nYou are a topic analyst. Neighbouring analysts shared beliefs with you; "
                      "synthesize what they imply for your topics.\nReply with blocks of lines:\n"
                      "STATEMENT: <one sentence>\nCONFIDENCE: <0..1>";
    std::ostringstream user;
    user << "TOPICS: " << join(agent_topics, "; ") << "\n";
    for (const auto& b : shared) user << "SHARED: " << flatten(b.statement) << "\n";
    r.user_prompt = user.str();
    return r;
}

GenerationRequest hypothesis_synthesis(const Query& query,
                                       const std::vector<BeliefStatement>& beliefs) {
    GenerationRequest r;
    r.system_prompt = std::string(kTagHypothesis) +
                      "\nAnswer the query from the belief statements only.\nReply with:\n"
                      "HYPOTHESIS: <answer>";
    std::ostringstream user;
    user << "QUERY: " << flatten(query.text) << "\n";
    for (const auto& b : beliefs) user << "BELIEF: " << flatten(b.statement) << "\n";
    r.user_prompt = user.str();
    return r;
}

GenerationRequest baseline_hypothesis(const Query& query, const std::vector<Article>& batch,
                                      const std::string* previous, int excerpt_words) {
    GenerationRequest r;
    r.system_prompt = std::string(kTagBaseline) +
                      "\nAnswer the query from the current batch of articles, refining the "
                      "previous hypothesis when one is given.\nReply with:\n"
                      "HYPOTHESIS: <answer>\nREFERENCES: <cited article ids>";
    std::ostringstream user;
    user << "QUERY: " << flatten(query.text) << "\n";
    if (previous != nullptr) user << "PREVIOUS: " << flatten(*previous) << "\n";
    for (const auto& a : batch) {
        user << "ARTICLE-ID: " << a.id << "\n"
             << "ARTICLE: " << excerpt(flatten(a.title) + " " + flatten(a.body), excerpt_words)
             << "\n";
    }
    r.user_prompt = user.str();
    r.max_tokens = 1024;
    return r;
}

GenerationRequest scenario_generation(const Query& query, int ordinal, int total) {
    GenerationRequest r;
    r.system_prompt = std::string(kTagScenario) +
                      "\nInvent one concrete news scenario that would satisfy the monitoring "
                      "query, as a causal chain of sub-events.\nReply with lines:\n"
                      "DESCRIPTION: <one sentence>\nSUB-EVENT: <step>  (3 to 5 lines, in causal order)\n"
                      "UNCERTAINTY: <0..1>\nTIMESPAN: <days from trigger to impact>";
    std::ostringstream user;
    user << "QUERY: " << flatten(query.text) << "\n"
         << "ORDINAL: " << ordinal << "\n"
         << "COUNT: " << total << "\n";
    r.user_prompt = user.str();
    return r;
}

GenerationRequest article_generation(const std::string& scenario_id, const std::string& sub_event,
                                     const std::string& perspective, int target_words,
                                     int serial) {
    GenerationRequest r;
    r.system_prompt = std::string(kTagArticle) +
                      "\nWrite one synthetic news article covering the sub-event from the given "
                      "perspective, close to the target word count.\nReply with lines:\n"
                      "TITLE: <headline>\nBODY: <article text on one line>";
    std::ostringstream user;
    user << "SCENARIO: " << scenario_id << "\n"
         << "SUB-EVENT: " << flatten(sub_event) << "\n"
         << "PERSPECTIVE: " << perspective << "\n"
         << "TARGET-WORDS: " << target_words << "\n"
         << "SERIAL: " << serial << "\n";
    r.user_prompt = user.str();
    r.max_tokens = 2048;
    return r;
}

GenerationRequest subevent_judgement(const std::string& sub_event,
                                     const std::string& hypothesis_text) {
    GenerationRequest r;
    r.system_prompt = std::string(kTagJudgement) +
                      "\nDoes the hypothesis identify the sub-event? Reply YES or NO.";
    std::ostringstream user;
    user << "SUB-EVENT: " << flatten(sub_event) << "\n"
         << "HYPOTHESIS: " << flatten(hypothesis_text) << "\n";
    r.user_prompt = user.str();
    r.max_tokens = 8;
    return r;
}

// ---- parsers ----

std::vector<std::string> parse_listed_items(const std::string& reply) {
    std::vector<std::string> numbered, bulleted;
    for (const auto& line : split_lines(reply)) {
        if (auto n = numbered_entry(line); n && !n->empty()) numbered.push_back(*n);
        else if (auto b = bullet_entry(line); b && !b->empty()) bulleted.push_back(*b);
    }
    return numbered.empty() ? bulleted : numbered;
}

std::vector<BeliefBlock> parse_belief_blocks(const std::string& reply) {
    std::vector<BeliefBlock> blocks;
    for (const auto& line : split_lines(reply)) {
        if (starts_with(line, "STATEMENT:")) {
            BeliefBlock b;
            b.statement = trim(line.substr(10));
            blocks.push_back(std::move(b));
        } else if (starts_with(line, "CONFIDENCE:") && !blocks.empty()) {
            try {
                double c = std::stod(trim(line.substr(11)));
                blocks.back().confidence = std::clamp(c, 0.0, 1.0);
            } catch (...) {
                // keep fallback
            }
        } else if (starts_with(line, "REFERENCES:") && !blocks.empty()) {
            blocks.back().references = split_reference_list(trim(line.substr(11)));
        }
    }
    if (blocks.empty()) {
        std::string whole = trim(reply);
        if (!whole.empty()) blocks.push_back(BeliefBlock{whole, std::nullopt, {}});
    }
    std::erase_if(blocks, [](const BeliefBlock& b) { return b.statement.empty(); });
    return blocks;
}

HypothesisReply parse_hypothesis(const std::string& reply) {
    HypothesisReply out;
    for (const auto& line : split_lines(reply)) {
        if (starts_with(line, "HYPOTHESIS:")) {
            out.text = trim(line.substr(11));
        } else if (starts_with(line, "REFERENCES:")) {
            out.references_present = true;
            auto refs = split_reference_list(trim(line.substr(11)));
            out.references.insert(out.references.end(), refs.begin(), refs.end());
        }
    }
    if (out.text.empty()) out.text = trim(reply);
    normalize_references(out.references);
    return out;
}

ScenarioReply parse_scenario(const std::string& reply) {
    ScenarioReply out;
    for (const auto& line : split_lines(reply)) {
        if (starts_with(line, "DESCRIPTION:")) {
            out.description = trim(line.substr(12));
        } else if (starts_with(line, "SUB-EVENT:")) {
            std::string step = trim(line.substr(10));
            if (!step.empty()) out.sub_events.push_back(std::move(step));
        } else if (starts_with(line, "UNCERTAINTY:")) {
            try {
                out.uncertainty = std::clamp(std::stod(trim(line.substr(12))), 0.0, 1.0);
            } catch (...) {
            }
        } else if (starts_with(line, "TIMESPAN:")) {
            try {
                out.timespan_days = std::max(0ll, static_cast<long long>(
                                                      std::stoll(trim(line.substr(9)))));
            } catch (...) {
            }
        }
    }
    if (out.description.empty() && !out.sub_events.empty()) out.description = out.sub_events.front();
    return out;
}

ArticleReply parse_article(const std::string& reply) {
    ArticleReply out;
    out.title = payload_line(reply, "TITLE:");
    out.body = payload_line(reply, "BODY:");
    if (out.body.empty()) out.body = trim(reply);
    return out;
}

bool parse_yes_no(const std::string& reply) {
    std::string lower = lowercase(trim(reply));
    return starts_with(lower, "yes");
}

}  // namespace salt::prompts
