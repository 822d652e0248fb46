#include "salt/engine.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

#include "salt/errors.hpp"
#include "salt/logging.hpp"
#include "salt/prompts.hpp"
#include "salt/text.hpp"

namespace salt {

void EngineConfig::validate() const {
    auto in_unit = [](double v) { return v >= 0.0 && v <= 1.0; };
    if (!in_unit(relevance_threshold)) throw ValidationError("relevance_threshold out of [0,1]");
    if (!in_unit(propagation_threshold)) throw ValidationError("propagation_threshold out of [0,1]");
    if (max_hops < 1) throw ValidationError("max_hops must be >= 1");
    if (top_k_share < 1) throw ValidationError("top_k_share must be >= 1");
    if (capacity < 1) throw ValidationError("capacity must be >= 1");
    if (batch_size < 1) throw ValidationError("batch_size must be >= 1");
    if (aging_half_life < 1) throw ValidationError("aging_half_life must be >= 1");
    if (hypothesis_top_k < 1) throw ValidationError("hypothesis_top_k must be >= 1");
}

// ---- belief store ----

BeliefStore::BeliefStore(int capacity) : capacity_(capacity) {
    if (capacity < 1) throw ContractError("belief store capacity must be >= 1");
}

bool BeliefStore::contains(const BeliefStatement& belief) const {
    return keys_.count({belief.statement, belief.timestamp}) > 0;
}

void BeliefStore::rebuild_keys() {
    keys_.clear();
    for (const auto& b : beliefs_) keys_.insert({b.statement, b.timestamp});
}

double retention_score(const BeliefStatement& belief, long long current_batch,
                       const EngineConfig& config) {
    double age = static_cast<double>(current_batch - belief.timestamp);
    return belief.confidence * std::pow(0.5, age / static_cast<double>(config.aging_half_life));
}

BeliefStore prune_store(BeliefStore store, long long current_batch, const EngineConfig& config) {
    if (store.beliefs_.size() <= static_cast<std::size_t>(store.capacity_)) return store;
    std::stable_sort(store.beliefs_.begin(), store.beliefs_.end(),
                     [&](const BeliefStatement& a, const BeliefStatement& b) {
                         double ra = retention_score(a, current_batch, config);
                         double rb = retention_score(b, current_batch, config);
                         if (ra != rb) return ra < rb;               // lowest first = evicted first
                         if (a.timestamp != b.timestamp) return a.timestamp < b.timestamp;
                         return a.statement < b.statement;
                     });
    store.beliefs_.erase(store.beliefs_.begin(),
                         store.beliefs_.begin() +
                             static_cast<std::ptrdiff_t>(store.beliefs_.size() -
                                                         static_cast<std::size_t>(store.capacity_)));
    // keep a stable in-store order: oldest first, then statement
    std::sort(store.beliefs_.begin(), store.beliefs_.end(),
              [](const BeliefStatement& a, const BeliefStatement& b) {
                  if (a.timestamp != b.timestamp) return a.timestamp < b.timestamp;
                  return a.statement < b.statement;
              });
    store.rebuild_keys();
    return store;
}

bool BeliefStore::insert(BeliefStatement belief, long long current_batch,
                         const EngineConfig& config) {
    if (!keys_.insert({belief.statement, belief.timestamp}).second) return false;
    auto pos = std::lower_bound(beliefs_.begin(), beliefs_.end(), belief,
                                [](const BeliefStatement& a, const BeliefStatement& b) {
                                    if (a.timestamp != b.timestamp) return a.timestamp < b.timestamp;
                                    return a.statement < b.statement;
                                });
    beliefs_.insert(pos, std::move(belief));
    if (beliefs_.size() > static_cast<std::size_t>(capacity_)) {
        *this = prune_store(std::move(*this), current_batch, config);
    }
    return true;
}

// ---- engine ----

Engine::Engine(AgentGraph graph, std::vector<Query> queries, EngineConfig config,
               const Embedder& embedder, TextBackend& backend, std::set<std::string> corpus_ids,
               bool record_graph_snapshots)
    : graph_(std::move(graph)),
      queries_(std::move(queries)),
      config_(config),
      embedder_(embedder),
      backend_(backend),
      corpus_ids_(std::move(corpus_ids)),
      record_graph_snapshots_(record_graph_snapshots) {
    config_.validate();
    for (const auto& agent : graph_.agents()) {
        stores_.emplace(agent.id, BeliefStore(config_.capacity));
    }
}

const BeliefStore& Engine::store(const std::string& agent_id) const {
    auto it = stores_.find(agent_id);
    if (it == stores_.end()) throw ContractError("no store for agent: " + agent_id);
    return it->second;
}

std::size_t Engine::total_beliefs() const {
    std::size_t n = 0;
    for (const auto& [_, store] : stores_) n += store.size();
    return n;
}

const EmbeddingVector& Engine::statement_embedding(const BeliefStatement& belief) {
    auto it = embedding_cache_.find(belief.id);
    if (it == embedding_cache_.end()) {
        it = embedding_cache_.emplace(belief.id, embedder_.embed(belief.statement)).first;
    }
    return it->second;
}

std::string Engine::generate_with_retry(const GenerationRequest& request,
                                        const std::string& where) {
    try {
        return backend_.generate(request);
    } catch (const BackendError& e) {
        if (e.terminal) throw;
        log_warn(where + ": backend failed (" + e.what() + "), retrying once");
    }
    return backend_.generate(request);  // second failure propagates to caller
}

std::vector<RelevanceScore> Engine::assign_relevance(const Article& item) const {
    std::vector<RelevanceScore> scores;
    scores.reserve(graph_.agents().size());
    EmbeddingVector item_vec;
    bool degenerate = false;
    try {
        item_vec = embedder_.embed(item.title + " " + item.body);
    } catch (const ZeroInformationError&) {
        degenerate = true;
        log_warn("article " + item.id + " has a degenerate embedding; skipping");
    }
    for (const auto& agent : graph_.agents()) {
        double score = 0.0;
        if (!degenerate) score = std::max(0.0, cosine(item_vec, agent.representation));
        scores.push_back({agent.id, score});
    }
    return scores;
}

std::vector<BeliefStatement> Engine::process_item(const Agent& agent, const Article& item) {
    std::string reply;
    try {
        reply = generate_with_retry(prompts::belief_generation(agent.topics, item),
                                    "process_item(" + agent.id + ", " + item.id + ")");
    } catch (const BackendError& e) {
        if (e.terminal) throw;
        log_warn("process_item(" + agent.id + ", " + item.id + "): skipped after retry: " +
                 e.what());
        return {};
    }

    std::vector<BeliefStatement> inserted;
    auto& store = stores_.at(agent.id);
    for (const auto& block : prompts::parse_belief_blocks(reply)) {
        std::vector<std::string> references;
        for (const auto& ref : block.references) {
            if (corpus_ids_.count(ref) > 0) references.push_back(ref);
        }
        references.push_back(item.id);  // postcondition: always cites its item
        BeliefStatement belief =
            BeliefStatement::make(block.statement, block.confidence.value_or(0.5),
                                  item.timestamp, std::move(references), agent.id, /*hop=*/0);
        if (store.insert(belief, item.timestamp, config_)) inserted.push_back(std::move(belief));
    }
    return inserted;
}

std::vector<BeliefStatement> Engine::synthesize_at(const Agent& receiver,
                                                   const std::vector<BeliefStatement>& shared,
                                                   long long timestamp) {
    std::string reply;
    try {
        reply = generate_with_retry(prompts::belief_synthesis(receiver.topics, shared),
                                    "synthesize(" + receiver.id + ")");
    } catch (const BackendError& e) {
        if (e.terminal) throw;
        log_warn("synthesis at " + receiver.id + " skipped: " + e.what());
        return {};
    }

    double mean_confidence = 0.0;
    std::vector<std::string> references;
    int max_hop = 0;
    for (const auto& b : shared) {
        mean_confidence += b.confidence;
        references.insert(references.end(), b.references.begin(), b.references.end());
        max_hop = std::max(max_hop, b.hop_count);
    }
    mean_confidence /= static_cast<double>(shared.size());
    double fallback_confidence = std::clamp(mean_confidence * 0.9, 0.0, 1.0);

    std::vector<BeliefStatement> out;
    for (const auto& block : prompts::parse_belief_blocks(reply)) {
        out.push_back(BeliefStatement::make(block.statement,
                                            block.confidence.value_or(fallback_confidence),
                                            timestamp, references, receiver.id, max_hop + 1));
    }
    return out;
}

PropagationTrace Engine::propagate_beliefs(const Agent& source,
                                           const std::vector<BeliefStatement>& new_beliefs) {
    PropagationTrace trace;
    if (new_beliefs.empty()) return trace;

    struct WaveEntry {
        std::string agent_id;
        std::vector<BeliefStatement> beliefs;
    };
    std::map<std::string, std::set<std::string>> visited;  // belief id -> agents seen
    for (const auto& b : new_beliefs) visited[b.id].insert(source.id);

    std::deque<WaveEntry> queue;
    queue.push_back({source.id, new_beliefs});

    while (!queue.empty()) {
        WaveEntry entry = std::move(queue.front());
        queue.pop_front();

        for (const auto& neighbor_id : graph_.propagation_neighbors(entry.agent_id)) {
            if (graph_.effective_weight(entry.agent_id, neighbor_id) <
                config_.propagation_threshold) {
                continue;
            }
            const Agent& receiver = graph_.agent(neighbor_id);

            // hop-bounded, cycle-guarded candidate set
            std::vector<const BeliefStatement*> candidates;
            for (const auto& b : entry.beliefs) {
                if (b.hop_count >= config_.max_hops) continue;
                if (visited[b.id].count(neighbor_id) > 0) continue;
                candidates.push_back(&b);
            }
            if (candidates.empty()) continue;

            std::vector<std::pair<double, const BeliefStatement*>> scored;
            scored.reserve(candidates.size());
            for (const BeliefStatement* b : candidates) {
                scored.emplace_back(cosine(statement_embedding(*b), receiver.representation), b);
            }
            double set_relevance = -1.0;
            for (const auto& [score, _] : scored) set_relevance = std::max(set_relevance, score);
            if (set_relevance <= config_.propagation_threshold) continue;

            std::sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) {
                if (a.first != b.first) return a.first > b.first;
                return a.second->id < b.second->id;
            });
            if (scored.size() > static_cast<std::size_t>(config_.top_k_share)) {
                scored.resize(static_cast<std::size_t>(config_.top_k_share));
            }

            std::vector<BeliefStatement> shared;
            long long timestamp = 0;
            for (const auto& [_, b] : scored) {
                visited[b->id].insert(neighbor_id);
                shared.push_back(*b);
                timestamp = std::max(timestamp, b->timestamp);
            }

            std::vector<BeliefStatement> synthesized = synthesize_at(receiver, shared, timestamp);

            ShareEvent event;
            event.from = entry.agent_id;
            event.to = neighbor_id;
            for (const auto& b : shared) event.shared_ids.push_back(b.id);

            std::vector<BeliefStatement> forward;
            auto& receiver_store = stores_.at(neighbor_id);
            for (auto& b : synthesized) {
                if (!receiver_store.insert(b, timestamp, config_)) continue;
                event.synthesized_ids.push_back(b.id);
                // never straight back along the arrival edge; never revisit
                visited[b.id].insert(neighbor_id);
                visited[b.id].insert(entry.agent_id);
                if (b.hop_count < config_.max_hops) forward.push_back(std::move(b));
            }
            trace.events.push_back(std::move(event));
            if (!forward.empty()) queue.push_back({neighbor_id, std::move(forward)});
        }
    }
    return trace;
}

std::vector<Hypothesis> Engine::synthesize_hypotheses(long long batch_index) {
    std::vector<Hypothesis> hypotheses;
    hypotheses.reserve(queries_.size());

    for (const auto& query : queries_) {
        EmbeddingVector query_vec;
        bool degenerate = false;
        try {
            query_vec = embedder_.embed(query.text);
        } catch (const ZeroInformationError&) {
            degenerate = true;
            log_warn("query " + query.id + " has a degenerate embedding");
        }

        std::vector<std::pair<double, const BeliefStatement*>> pool;
        if (!degenerate) {
            for (const auto& agent : graph_.agents()) {
                for (const auto& belief : stores_.at(agent.id).beliefs()) {
                    double score = std::max(0.0, cosine(statement_embedding(belief), query_vec)) *
                                   belief.confidence;
                    if (score > 0.0) pool.emplace_back(score, &belief);
                }
            }
        }

        Hypothesis h;
        h.query_id = query.id;
        h.timestamp = batch_index;
        if (pool.empty()) {
            h.text = kInsufficientEvidence;
            hypotheses.push_back(std::move(h));
            continue;
        }

        std::sort(pool.begin(), pool.end(), [](const auto& a, const auto& b) {
            if (a.first != b.first) return a.first > b.first;
            return a.second->id < b.second->id;
        });
        if (pool.size() > static_cast<std::size_t>(config_.hypothesis_top_k)) {
            pool.resize(static_cast<std::size_t>(config_.hypothesis_top_k));
        }

        std::vector<BeliefStatement> selected;
        selected.reserve(pool.size());
        for (const auto& [_, b] : pool) selected.push_back(*b);

        try {
            std::string reply =
                generate_with_retry(prompts::hypothesis_synthesis(query, selected),
                                    "hypothesis(" + query.id + ")");
            h.text = prompts::parse_hypothesis(reply).text;
        } catch (const BackendError& e) {
            if (e.terminal) throw;
            log_warn("hypothesis for " + query.id + " fell back to verbatim beliefs: " + e.what());
            std::vector<std::string> statements;
            for (const auto& b : selected) statements.push_back(b.statement);
            h.text = join(statements, "; ");
        }
        for (const auto& b : selected) {
            h.supporting_beliefs.push_back(b.id);
            h.references.insert(h.references.end(), b.references.begin(), b.references.end());
        }
        normalize_references(h.references);
        hypotheses.push_back(std::move(h));
    }
    return hypotheses;
}

BatchRecord Engine::run_batch(const Batch& batch) {
    BatchRecord record;
    record.batch = batch.index;

    std::map<std::string, double> batch_relevance;
    for (const auto& item : batch.articles) {
        std::vector<RelevanceScore> scores = assign_relevance(item);
        for (const auto& s : scores) {
            auto [it, inserted] = batch_relevance.try_emplace(s.agent_id, s.score);
            if (!inserted) it->second = std::max(it->second, s.score);
        }
        for (const auto& s : scores) {
            if (s.score <= config_.relevance_threshold) continue;
            const Agent& agent = graph_.agent(s.agent_id);
            std::vector<BeliefStatement> fresh = process_item(agent, item);
            if (fresh.empty()) continue;
            PropagationTrace wave = propagate_beliefs(agent, fresh);
            record.trace.events.insert(record.trace.events.end(), wave.events.begin(),
                                       wave.events.end());
        }
    }

    graph_.update_topology(batch_relevance);

    for (auto& [agent_id, store] : stores_) {
        store = prune_store(std::move(store), batch.index, config_);
    }

    record.hypotheses = synthesize_hypotheses(batch.index);
    for (const auto& [agent_id, store] : stores_) record.store_sizes[agent_id] = store.size();
    if (record_graph_snapshots_) record.graph_edges = graph_.edge_snapshots();
    return record;
}

RunResult Engine::run(const std::vector<Batch>& batches, BatchRecordSink* sink) {
    RunResult result;
    for (const auto& batch : batches) {
        try {
            BatchRecord record = run_batch(batch);
            if (sink != nullptr) sink->write(record);
            result.batches.push_back(std::move(record));
        } catch (const BackendError& e) {
            if (!e.terminal) throw;  // non-terminal errors are handled in-phase
            result.aborted = true;
            result.abort_reason = e.what();
            log_warn("run aborted at batch " + std::to_string(batch.index) + ": " + e.what());
            break;
        }
    }
    return result;
}

}  // namespace salt
