#include "salt/types.hpp"

#include <algorithm>
#include <sstream>

#include "salt/errors.hpp"
#include "salt/text.hpp"

namespace salt {

int count_words(std::string_view body) {
    int count = 0;
    bool in_word = false;
    for (char c : body) {
        bool space = (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v');
        if (!space && !in_word) ++count;
        in_word = !space;
    }
    return count;
}

void normalize_references(std::vector<std::string>& refs) {
    std::sort(refs.begin(), refs.end());
    refs.erase(std::unique(refs.begin(), refs.end()), refs.end());
}

Article Article::make(std::string id, std::string title, std::string body,
                      long long timestamp, std::string scenario_id, std::string perspective) {
    if (id.empty()) throw ContractError("article id must be non-empty");
    if (timestamp < 0) throw ContractError("article timestamp must be >= 0: " + id);
    Article a;
    a.id = std::move(id);
    a.title = std::move(title);
    a.body = std::move(body);
    a.timestamp = timestamp;
    a.scenario_id = std::move(scenario_id);
    a.perspective = std::move(perspective);
    a.word_count = count_words(a.body);
    return a;
}

BeliefStatement BeliefStatement::make(std::string statement, double confidence,
                                      long long timestamp, std::vector<std::string> references,
                                      std::string origin_agent, int hop_count) {
    if (statement.empty()) throw ContractError("belief statement must be non-empty");
    if (confidence < 0.0 || confidence > 1.0)
        throw ContractError("belief confidence out of [0,1]: " + std::to_string(confidence));
    if (timestamp < 0) throw ContractError("belief timestamp must be >= 0");
    if (hop_count < 0) throw ContractError("belief hop_count must be >= 0");
    if (hop_count == 0 && references.empty())
        throw ContractError("hop-0 belief must cite at least one article");
    normalize_references(references);

    BeliefStatement b;
    b.statement = std::move(statement);
    b.confidence = confidence;
    b.timestamp = timestamp;
    b.references = std::move(references);
    b.origin_agent = std::move(origin_agent);
    b.hop_count = hop_count;

    std::ostringstream key;
    key << b.origin_agent << '\x1f' << b.statement << '\x1f' << b.timestamp << '\x1f'
        << b.hop_count << '\x1f' << join(b.references, ",");
    b.id = to_hex(fnv1a64(key.str()));
    return b;
}

}  // namespace salt
