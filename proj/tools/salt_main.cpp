// salt: generate synthetic workloads, run the streaming systems, evaluate runs.
//
// Exit codes: 0 success, 2 input/validation error, 3 backend/runtime error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "salt/baseline.hpp"
#include "salt/config.hpp"
#include "salt/corpus.hpp"
#include "salt/datagen.hpp"
#include "salt/engine.hpp"
#include "salt/errors.hpp"
#include "salt/eval.hpp"
#include "salt/http_backend.hpp"
#include "salt/mock_backend.hpp"
#include "salt/network.hpp"
#include "salt/run_record.hpp"
#include "salt/text.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitRuntime = 3;

struct GenerateArgs {
    std::string spec_path;
    std::string out_dir;
    std::string backend = "mock";
    std::optional<std::uint64_t> seed;  // overrides the spec file's seed
};

struct RunArgs {
    std::string manifest_path;
    std::string config_path;
    std::string corpus_path;
    std::string queries_path;
    std::string system = "salt";
    std::string backend = "mock";
    std::optional<std::uint64_t> seed;
    std::string out_dir;
    bool trace = false;
    std::optional<int> batch_size;
};

struct EvalArgs {
    std::vector<std::string> run_dirs;
    std::string scenarios_path;
    std::string out_dir;
    double matcher_threshold = 0.6;
};

std::unique_ptr<salt::TextBackend> make_backend(const std::string& kind,
                                                const salt::RunConfig& config,
                                                std::optional<std::uint64_t> seed) {
    if (kind == "mock") {
        if (!seed.has_value()) {
            throw salt::ValidationError("--seed is required with the mock backend");
        }
        salt::MockConfig mock = config.mock;
        mock.seed = *seed;
        mock.embed_dim = config.embed_dim;
        return std::make_unique<salt::MockBackend>(mock);
    }
    if (kind == "http") {
        return std::make_unique<salt::HttpBackend>(salt::HttpBackend::from_env(config.http));
    }
    throw salt::ValidationError("unknown backend: " + kind);
}

std::vector<salt::GenerationSpec> load_generation_specs(const std::string& path,
                                                        std::optional<std::uint64_t> seed_override) {
    std::ifstream in(path);
    if (!in) throw salt::ValidationError("cannot open generation spec: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw salt::ValidationError("malformed generation spec: " + std::string(e.what()));
    }
    if (!j.contains("seed") && !seed_override.has_value()) {
        throw salt::ValidationError("generation spec must carry a seed (no implicit randomness)");
    }
    std::uint64_t base_seed = seed_override.value_or(j.value("seed", 0ull));

    std::vector<salt::GenerationSpec> specs;
    for (const auto& q : j.at("queries")) {
        salt::GenerationSpec spec;
        spec.query_text = q.at("text").get<std::string>();
        spec.domain = q.value("domain", std::string{});
        spec.scenario_count = q.value("scenario_count", spec.scenario_count);
        if (q.contains("articles_per_scenario")) {
            auto range = q.at("articles_per_scenario").get<std::vector<int>>();
            if (range.size() != 2) {
                throw salt::ValidationError("articles_per_scenario must be [lo, hi]");
            }
            spec.articles_per_scenario = {range[0], range[1]};
        }
        if (q.contains("perspectives")) {
            spec.perspectives = q.at("perspectives").get<std::vector<std::string>>();
        }
        if (q.contains("length_range")) {
            auto range = q.at("length_range").get<std::vector<int>>();
            if (range.size() != 2) throw salt::ValidationError("length_range must be [lo, hi]");
            spec.length_range = {range[0], range[1]};
        }
        if (q.contains("temporal")) {
            const json& t = q.at("temporal");
            std::string kind = t.value("kind", "uniform");
            if (kind == "uniform") {
                spec.temporal.kind = salt::TemporalDistribution::Kind::uniform;
                spec.temporal.span = t.value("span", spec.temporal.span);
            } else if (kind == "clustered") {
                spec.temporal.kind = salt::TemporalDistribution::Kind::clustered;
                spec.temporal.center = t.value("center", spec.temporal.center);
                spec.temporal.width = t.value("width", spec.temporal.width);
            } else {
                throw salt::ValidationError("temporal.kind must be uniform or clustered");
            }
        }
        spec.seed = q.contains("seed")
                        ? q.at("seed").get<std::uint64_t>()
                        : salt::fnv1a64(salt::to_hex(base_seed) + "|spec|" +
                                        std::to_string(specs.size()));
        spec.validate();
        specs.push_back(std::move(spec));
    }
    if (specs.empty()) throw salt::ValidationError("generation spec lists no queries");
    return specs;
}

int cmd_generate(const GenerateArgs& args) {
    salt::RunConfig config;  // defaults; generation only needs mock/http settings
    std::vector<salt::GenerationSpec> specs = load_generation_specs(args.spec_path, args.seed);
    std::uint64_t backend_seed = args.seed.value_or(specs.front().seed);
    auto backend = make_backend(args.backend, config, backend_seed);

    salt::Workload workload = salt::generate_workload(specs, *backend);

    fs::create_directories(args.out_dir);
    salt::save_corpus(workload.corpus, args.out_dir + "/corpus.jsonl");
    salt::QuerySet qs{workload.queries, workload.scenarios};
    salt::save_query_set(qs, args.out_dir + "/queries.json");
    salt::save_workload_manifest(workload.manifest, args.out_dir + "/workload_manifest.json");

    std::cout << "generated " << workload.corpus.size() << " articles, "
              << workload.scenarios.size() << " scenarios, " << workload.queries.size()
              << " queries -> " << args.out_dir << "\n";
    return kExitOk;
}

void apply_manifest(RunArgs& args) {
    std::ifstream in(args.manifest_path);
    if (!in) throw salt::ValidationError("cannot open run manifest: " + args.manifest_path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw salt::ValidationError("malformed run manifest: " + std::string(e.what()));
    }
    if (args.config_path.empty()) args.config_path = j.value("config", std::string{});
    if (args.corpus_path.empty()) args.corpus_path = j.value("corpus", std::string{});
    if (args.queries_path.empty()) args.queries_path = j.value("queries", std::string{});
    if (j.contains("system")) args.system = j.at("system").get<std::string>();
    if (j.contains("backend")) args.backend = j.at("backend").get<std::string>();
    if (!args.seed.has_value() && j.contains("seed")) {
        args.seed = j.at("seed").get<std::uint64_t>();
    }
    if (args.out_dir.empty()) args.out_dir = j.value("out", std::string{});
    if (j.contains("trace")) args.trace = j.at("trace").get<bool>();
}

int cmd_run(RunArgs args) {
    if (!args.manifest_path.empty()) apply_manifest(args);
    if (args.corpus_path.empty() || args.queries_path.empty() || args.out_dir.empty()) {
        throw salt::ValidationError("run requires --corpus, --queries and --out");
    }
    if (args.system != "salt" && args.system != "temporal-baseline") {
        throw salt::ValidationError("unknown system: " + args.system);
    }

    salt::RunConfig config;
    if (!args.config_path.empty()) config = salt::load_run_config(args.config_path);
    if (args.batch_size.has_value()) {
        config.engine.batch_size = *args.batch_size;
        config.engine.validate();
    }

    std::vector<salt::Article> corpus = salt::load_corpus(args.corpus_path);
    salt::QuerySet qs = salt::load_query_set(args.queries_path);
    salt::ValidationReport report = salt::validate_corpus(corpus, qs.scenarios);
    if (!report.ok()) {
        std::cerr << "corpus validation failed:\n";
        for (const auto& issue : report.issues) {
            std::cerr << "  [" << issue.kind << "] " << issue.detail << "\n";
        }
        return kExitValidation;
    }

    auto backend = make_backend(args.backend, config, args.seed);

    salt::RunMeta meta;
    meta.system = args.system;
    meta.backend = backend->name();
    meta.seed = args.seed.value_or(0);
    meta.config_hash = salt::config_hash(config);
    for (const auto& a : corpus) meta.corpus_ids.push_back(a.id);
    std::sort(meta.corpus_ids.begin(), meta.corpus_ids.end());
    for (const auto& q : qs.queries) meta.query_ids.push_back(q.id);
    meta.traces = args.trace;

    salt::RunWriter writer(args.out_dir, meta);

    // keep the resolved configuration next to the records for audits
    {
        std::ofstream cfg(args.out_dir + "/config.json");
        cfg << salt::config_to_json(config) << "\n";
    }

    if (args.system == "salt") {
        salt::Embedder embedder(config.embed_dim);
        std::vector<salt::Query> queries = qs.queries;
        salt::AgentGraph graph =
            salt::initialize_network(queries, *backend, config.network, embedder);
        std::set<std::string> corpus_ids(meta.corpus_ids.begin(), meta.corpus_ids.end());
        salt::Engine engine(std::move(graph), queries, config.engine, embedder, *backend,
                            std::move(corpus_ids), args.trace);
        std::vector<salt::Batch> batches = salt::batch_stream(corpus, config.engine.batch_size);
        salt::RunResult result = engine.run(batches, &writer);
        writer.finalize(result.aborted ? "aborted: " + result.abort_reason : "complete");
        if (result.aborted) {
            std::cerr << "run aborted, partial results kept: " << result.abort_reason << "\n";
            return kExitRuntime;
        }
    } else {
        salt::BaselineParams params = config.baseline;
        params.batch_size = config.engine.batch_size;
        salt::TemporalContext context =
            salt::run_baseline(corpus, qs.queries, *backend, params, &writer);
        writer.finalize(context.aborted ? "aborted: " + context.abort_reason : "complete");
        if (context.aborted) {
            std::cerr << "run aborted, partial results kept: " << context.abort_reason << "\n";
            return kExitRuntime;
        }
    }
    std::cout << "run complete -> " << args.out_dir << "\n";
    return kExitOk;
}

int cmd_eval(const EvalArgs& args) {
    salt::QuerySet qs = salt::load_query_set(args.scenarios_path);

    std::vector<salt::WorkloadRow> rows;
    for (const auto& s : qs.scenarios) {
        rows.push_back({s.query_id, s.id, "unassigned", s.metrics});
    }
    salt::WorkloadManifest manifest;
    manifest.rows = rows;

    fs::create_directories(args.out_dir);
    salt::LexicalMatcher matcher(args.matcher_threshold);

    std::vector<salt::EvaluationReport> reports;
    for (std::size_t i = 0; i < args.run_dirs.size(); ++i) {
        salt::LoadedRun run = salt::load_run(args.run_dirs[i]);

        // the run must cover the ground truth it is scored against
        for (const auto& s : qs.scenarios) {
            for (const auto& id : s.relevant_article_ids) {
                if (!std::binary_search(run.meta.corpus_ids.begin(), run.meta.corpus_ids.end(),
                                        id)) {
                    throw salt::ValidationError("run " + args.run_dirs[i] +
                                                " does not cover article " + id +
                                                " (mismatched corpus)");
                }
            }
        }

        salt::EvaluationReport report =
            salt::evaluate_run(run.hypotheses_by_query(), qs, matcher, run.meta.system,
                               run.meta.seed, run.meta.config_hash);
        std::string stem = args.out_dir + "/report_" + std::to_string(i) + "_" + report.system;
        salt::save_report(report, stem + ".json");
        salt::save_stratified_csv(salt::stratify_by_complexity({report}, manifest),
                                  stem + "_stratified.csv");
        std::cout << report.system << ": RP " << report.aggregate_rp << "% HQ "
                  << report.aggregate_hq << "%\n";
        reports.push_back(std::move(report));
    }

    if (reports.size() >= 2) {
        std::ofstream cmp(args.out_dir + "/comparison.csv");
        cmp << "query_id";
        for (const auto& r : reports) cmp << ",rp_" << r.system << ",hq_" << r.system;
        cmp << "\n";
        for (std::size_t qi = 0; qi < reports.front().per_query.size(); ++qi) {
            cmp << reports.front().per_query[qi].query_id;
            for (const auto& r : reports) {
                cmp << ',' << r.per_query[qi].rp << ',' << r.per_query[qi].hq;
            }
            cmp << "\n";
        }
        cmp << "aggregate";
        for (const auto& r : reports) cmp << ',' << r.aggregate_rp << ',' << r.aggregate_hq;
        cmp << "\n";
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"streaming multi-agent anticipatory reasoning over article streams"};
    app.require_subcommand(1);

    GenerateArgs gen;
    CLI::App* generate = app.add_subcommand("generate", "synthesize a corpus from a spec file");
    generate->add_option("--spec", gen.spec_path, "generation spec (JSON)")->required();
    generate->add_option("--out", gen.out_dir, "output directory")->required();
    generate->add_option("--backend", gen.backend, "mock|http")->default_val("mock");
    std::uint64_t gen_seed = 0;
    CLI::Option* gen_seed_opt = generate->add_option("--seed", gen_seed, "override spec seed");

    RunArgs run;
    CLI::App* run_cmd = app.add_subcommand("run", "stream a corpus through a system");
    run_cmd->add_option("--manifest", run.manifest_path, "run manifest (JSON)");
    run_cmd->add_option("--config", run.config_path, "run config (JSON)");
    run_cmd->add_option("--corpus", run.corpus_path, "corpus file (JSONL)");
    run_cmd->add_option("--queries", run.queries_path, "query/scenario file (JSON)");
    run_cmd->add_option("--system", run.system, "salt|temporal-baseline")->default_val("salt");
    run_cmd->add_option("--backend", run.backend, "mock|http")->default_val("mock");
    std::uint64_t run_seed = 0;
    CLI::Option* run_seed_opt = run_cmd->add_option("--seed", run_seed, "mock backend seed");
    run_cmd->add_option("--out", run.out_dir, "run record directory");
    run_cmd->add_flag("--trace", run.trace, "record propagation traces and graph snapshots");
    int batch_size = 0;
    CLI::Option* batch_opt = run_cmd->add_option("--batch-size", batch_size, "override batch size");

    EvalArgs ev;
    CLI::App* eval_cmd = app.add_subcommand("eval", "score run records against ground truth");
    eval_cmd->add_option("--run", ev.run_dirs, "run record directory (repeatable)")->required();
    eval_cmd->add_option("--scenarios", ev.scenarios_path, "query/scenario file (JSON)")
        ->required();
    eval_cmd->add_option("--out", ev.out_dir, "report output directory")->required();
    eval_cmd->add_option("--matcher-threshold", ev.matcher_threshold,
                         "lexical matcher content-word threshold");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitValidation;
    }

    try {
        if (generate->parsed()) {
            if (gen_seed_opt->count() > 0) gen.seed = gen_seed;
            return cmd_generate(gen);
        }
        if (run_cmd->parsed()) {
            if (run_seed_opt->count() > 0) run.seed = run_seed;
            if (batch_opt->count() > 0) run.batch_size = batch_size;
            return cmd_run(run);
        }
        if (eval_cmd->parsed()) return cmd_eval(ev);
    } catch (const salt::BackendError& e) {
        std::cerr << "backend error: " << e.what() << "\n";
        return kExitRuntime;
    } catch (const salt::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const salt::ContractError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "runtime error: " << e.what() << "\n";
        return kExitRuntime;
    }
    return kExitValidation;
}
