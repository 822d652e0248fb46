#include "salt/run_record.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "json.hpp"

#include "salt/errors.hpp"

namespace salt {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string lock_path(const std::string& dir) { return dir + "/.lock"; }

std::string batch_filename(long long index) {
    std::ostringstream out;
    out << "batch_" << std::setw(5) << std::setfill('0') << index << ".json";
    return out.str();
}

json hypothesis_to_json(const Hypothesis& h) {
    return json{{"query_id", h.query_id},
                {"text", h.text},
                {"references", h.references},
                {"timestamp", h.timestamp},
                {"supporting_beliefs", h.supporting_beliefs}};
}

Hypothesis hypothesis_from_json(const json& j) {
    Hypothesis h;
    h.query_id = j.at("query_id").get<std::string>();
    h.text = j.at("text").get<std::string>();
    h.references = j.at("references").get<std::vector<std::string>>();
    h.timestamp = j.at("timestamp").get<long long>();
    h.supporting_beliefs = j.at("supporting_beliefs").get<std::vector<std::string>>();
    return h;
}

}  // namespace

RunWriter::RunWriter(std::string directory, RunMeta meta)
    : directory_(std::move(directory)), meta_(std::move(meta)) {
    fs::create_directories(directory_);
    // one run directory is owned by exactly one process
    std::FILE* lock = std::fopen(lock_path(directory_).c_str(), "wx");
    if (lock == nullptr) {
        throw ValidationError("run directory is locked or already in use: " + directory_);
    }
    std::fclose(lock);
}

RunWriter::~RunWriter() {
    if (!finalized_) {
        try {
            finalize("aborted: writer destroyed before completion");
        } catch (...) {
        }
    }
}

void RunWriter::write(const BatchRecord& record) {
    json doc;
    doc["batch"] = record.batch;
    json hypotheses = json::array();
    for (const auto& h : record.hypotheses) hypotheses.push_back(hypothesis_to_json(h));
    doc["hypotheses"] = std::move(hypotheses);
    doc["store_sizes"] = record.store_sizes;
    if (meta_.traces) {
        json trace = json::array();
        for (const auto& e : record.trace.events) {
            trace.push_back(json{{"from", e.from},
                                 {"to", e.to},
                                 {"shared", e.shared_ids},
                                 {"synthesized", e.synthesized_ids}});
        }
        doc["trace"] = std::move(trace);
        json edges = json::array();
        for (const auto& e : record.graph_edges) {
            edges.push_back(
                json{{"a", e.a}, {"b", e.b}, {"weight", e.weight}, {"activity", e.activity}});
        }
        doc["graph"] = json{{"edges", std::move(edges)}};
    }

    std::ofstream out(directory_ + "/" + batch_filename(record.batch));
    if (!out) throw ValidationError("cannot write batch record in " + directory_);
    out << doc.dump(2) << '\n';
    ++meta_.batch_count;
}

void RunWriter::finalize(const std::string& status) {
    if (finalized_) return;
    meta_.status = status;
    json doc{{"system", meta_.system},
             {"backend", meta_.backend},
             {"seed", meta_.seed},
             {"config_hash", meta_.config_hash},
             {"corpus_ids", meta_.corpus_ids},
             {"query_ids", meta_.query_ids},
             {"status", meta_.status},
             {"batch_count", meta_.batch_count},
             {"traces", meta_.traces}};
    std::ofstream out(directory_ + "/run.json");
    if (!out) throw ValidationError("cannot write run.json in " + directory_);
    out << doc.dump(2) << '\n';
    finalized_ = true;
    std::error_code ec;
    fs::remove(lock_path(directory_), ec);
}

LoadedRun load_run(const std::string& directory) {
    std::ifstream meta_in(directory + "/run.json");
    if (!meta_in) throw ValidationError("not a run directory (missing run.json): " + directory);
    json meta_doc;
    try {
        meta_in >> meta_doc;
    } catch (const json::exception& e) {
        throw ValidationError("malformed run.json in " + directory + ": " + e.what());
    }

    LoadedRun run;
    run.meta.system = meta_doc.at("system").get<std::string>();
    run.meta.backend = meta_doc.at("backend").get<std::string>();
    run.meta.seed = meta_doc.at("seed").get<std::uint64_t>();
    run.meta.config_hash = meta_doc.at("config_hash").get<std::string>();
    run.meta.corpus_ids = meta_doc.at("corpus_ids").get<std::vector<std::string>>();
    run.meta.query_ids = meta_doc.at("query_ids").get<std::vector<std::string>>();
    run.meta.status = meta_doc.at("status").get<std::string>();
    run.meta.batch_count = meta_doc.at("batch_count").get<long long>();
    run.meta.traces = meta_doc.value("traces", false);

    for (long long i = 0;; ++i) {
        std::ifstream in(directory + "/" + batch_filename(i));
        if (!in) break;
        json doc;
        try {
            in >> doc;
        } catch (const json::exception& e) {
            throw ValidationError("malformed batch record " + batch_filename(i) + ": " + e.what());
        }
        BatchRecord record;
        record.batch = doc.at("batch").get<long long>();
        for (const auto& h : doc.at("hypotheses")) {
            record.hypotheses.push_back(hypothesis_from_json(h));
        }
        if (doc.contains("store_sizes")) {
            record.store_sizes =
                doc.at("store_sizes").get<std::map<std::string, std::size_t>>();
        }
        if (doc.contains("trace")) {
            for (const auto& e : doc.at("trace")) {
                ShareEvent event;
                event.from = e.at("from").get<std::string>();
                event.to = e.at("to").get<std::string>();
                event.shared_ids = e.at("shared").get<std::vector<std::string>>();
                event.synthesized_ids = e.at("synthesized").get<std::vector<std::string>>();
                record.trace.events.push_back(std::move(event));
            }
        }
        run.batches.push_back(std::move(record));
    }
    return run;
}

std::map<std::string, std::vector<Hypothesis>> LoadedRun::hypotheses_by_query() const {
    std::map<std::string, std::vector<Hypothesis>> out;
    for (const auto& id : meta.query_ids) out[id];
    for (const auto& batch : batches) {
        for (const auto& h : batch.hypotheses) out[h.query_id].push_back(h);
    }
    return out;
}

}  // namespace salt
