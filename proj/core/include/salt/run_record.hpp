#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "salt/engine.hpp"
#include "salt/types.hpp"

namespace salt {

struct RunMeta {
    std::string system;   // "salt" | "temporal-baseline"
    std::string backend;  // "mock" | "http"
    std::uint64_t seed = 0;
    std::string config_hash;
    std::vector<std::string> corpus_ids;  // sorted; lets eval check id consistency
    std::vector<std::string> query_ids;
    std::string status = "incomplete";
    long long batch_count = 0;
    bool traces = false;
};

// Owns a run directory: takes the lockfile on construction, streams one
// batch_NNNNN.json per record, and writes run.json on finalize. The lock is
// released when the writer is destroyed.
class RunWriter final : public BatchRecordSink {
  public:
    RunWriter(std::string directory, RunMeta meta);
    ~RunWriter() override;

    RunWriter(const RunWriter&) = delete;
    RunWriter& operator=(const RunWriter&) = delete;

    void write(const BatchRecord& record) override;
    void finalize(const std::string& status);
    const std::string& directory() const { return directory_; }

  private:
    std::string directory_;
    RunMeta meta_;
    bool finalized_ = false;
};

struct LoadedRun {
    RunMeta meta;
    std::vector<BatchRecord> batches;

    std::map<std::string, std::vector<Hypothesis>> hypotheses_by_query() const;
};

LoadedRun load_run(const std::string& directory);

}  // namespace salt
