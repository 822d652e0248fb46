#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "salt/backend.hpp"
#include "salt/embedder.hpp"
#include "salt/network.hpp"
#include "salt/types.hpp"

namespace salt {

struct EngineConfig {
    double relevance_threshold = 0.25;   // item -> agent gate
    double propagation_threshold = 0.2;  // edge + belief-set gate
    int max_hops = 2;
    int top_k_share = 5;
    int capacity = 200;                  // memory bound M per agent
    int batch_size = 10;
    int aging_half_life = 20;            // batches
    int hypothesis_top_k = 10;

    void validate() const;  // throws ValidationError outside documented ranges
};

struct RelevanceScore {
    std::string agent_id;
    double score = 0.0;  // max(0, cosine), in [0,1]
};

// Bounded per-agent memory. Beliefs carry distinct (statement, timestamp)
// pairs; capacity is enforced on every insert, so the memory bound holds at
// every observable point, not just batch boundaries.
class BeliefStore {
  public:
    explicit BeliefStore(int capacity);

    // Returns false when an equal (statement, timestamp) pair is already held.
    // May evict (possibly the inserted belief itself) to stay within capacity.
    bool insert(BeliefStatement belief, long long current_batch, const EngineConfig& config);

    const std::vector<BeliefStatement>& beliefs() const { return beliefs_; }
    std::size_t size() const { return beliefs_.size(); }
    int capacity() const { return capacity_; }
    bool contains(const BeliefStatement& belief) const;

    friend BeliefStore prune_store(BeliefStore store, long long current_batch,
                                   const EngineConfig& config);

  private:
    void rebuild_keys();

    std::vector<BeliefStatement> beliefs_;
    std::set<std::pair<std::string, long long>> keys_;
    int capacity_;
};

// Retention score = confidence * 0.5^((current_batch - timestamp) / half_life).
// Lowest retention evicted first; ties evict the older timestamp, then the
// lexicographically smaller statement.
double retention_score(const BeliefStatement& belief, long long current_batch,
                       const EngineConfig& config);
BeliefStore prune_store(BeliefStore store, long long current_batch, const EngineConfig& config);

struct ShareEvent {
    std::string from;
    std::string to;
    std::vector<std::string> shared_ids;
    std::vector<std::string> synthesized_ids;
};

struct PropagationTrace {
    std::vector<ShareEvent> events;
};

struct BatchRecord {
    long long batch = 0;
    std::vector<Hypothesis> hypotheses;
    PropagationTrace trace;
    std::map<std::string, std::size_t> store_sizes;
    std::vector<AgentGraph::EdgeSnapshot> graph_edges;  // populated when tracing
};

struct RunResult {
    std::vector<BatchRecord> batches;
    bool aborted = false;
    std::string abort_reason;
};

// Streaming consumer so partial results hit disk before a run aborts.
class BatchRecordSink {
  public:
    virtual ~BatchRecordSink() = default;
    virtual void write(const BatchRecord& record) = 0;
};

// The streaming core. Batches are strictly sequential; within a batch the
// phases are: relevance assignment -> per-agent item processing (each followed
// by its propagation wave) -> one topology update -> pruning -> hypothesis
// synthesis.
class Engine {
  public:
    Engine(AgentGraph graph, std::vector<Query> queries, EngineConfig config,
           const Embedder& embedder, TextBackend& backend, std::set<std::string> corpus_ids,
           bool record_graph_snapshots = false);

    // One score per agent, sorted by agent id. A degenerate item embedding
    // yields all-zero scores (and a warning) rather than an error.
    std::vector<RelevanceScore> assign_relevance(const Article& item) const;

    // Generates hop-0 beliefs for one (agent, item) pair and stores them.
    // Returns only the newly inserted beliefs.
    std::vector<BeliefStatement> process_item(const Agent& agent, const Article& item);

    // Breadth-first wave from source along edges whose static weight passes
    // the graph's active threshold and whose effective weight passes the
    // propagation threshold. Beliefs never revisit an agent and synthesized
    // beliefs never return along their arrival edge.
    PropagationTrace propagate_beliefs(const Agent& source,
                                       const std::vector<BeliefStatement>& new_beliefs);

    // Global top-k belief pool per query, scored by query similarity times
    // confidence; only positive scores qualify. Empty pool -> the
    // "insufficient evidence" hypothesis.
    std::vector<Hypothesis> synthesize_hypotheses(long long batch_index);

    BatchRecord run_batch(const Batch& batch);
    RunResult run(const std::vector<Batch>& batches, BatchRecordSink* sink = nullptr);

    const AgentGraph& graph() const { return graph_; }
    const BeliefStore& store(const std::string& agent_id) const;
    const std::vector<Query>& queries() const { return queries_; }
    std::size_t total_beliefs() const;

    static constexpr const char* kInsufficientEvidence = "insufficient evidence";

  private:
    std::vector<BeliefStatement> synthesize_at(const Agent& receiver,
                                               const std::vector<BeliefStatement>& shared,
                                               long long timestamp);
    std::string generate_with_retry(const GenerationRequest& request, const std::string& where);
    const EmbeddingVector& statement_embedding(const BeliefStatement& belief);

    AgentGraph graph_;
    std::vector<Query> queries_;
    EngineConfig config_;
    Embedder embedder_;
    TextBackend& backend_;
    std::set<std::string> corpus_ids_;
    std::map<std::string, BeliefStore> stores_;
    std::map<std::string, EmbeddingVector> embedding_cache_;  // belief id -> vector
    bool record_graph_snapshots_;
};

}  // namespace salt
