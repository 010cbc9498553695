#include <atomic>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"

#include "slc/cost_distance.hpp"
#include "slc/cost_similarity.hpp"
#include "slc/exact.hpp"
#include "slc/hard_instance.hpp"
#include "slc/io.hpp"

namespace {

constexpr uint64_t kBenchEntryBudget = 100'000'000; // total adjacency entries per bench run

std::string read_text_input(const std::string& path) {
    if (path == "-") {
        std::ostringstream buf;
        buf << std::cin.rdbuf();
        return buf.str();
    }
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open input file: " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_output(const std::string& path, const std::string& content) {
    if (path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot open output file: " + path);
    }
    out << content;
}

slc::WeightedGraph load_graph(const std::string& cache_path, const std::string& text_path,
                              double eps) {
    if (!cache_path.empty()) {
        return slc::load_cache(cache_path);
    }
    return slc::ingest(read_text_input(text_path), eps).graph;
}

struct CommonOpts {
    std::string cache_path;
    std::string text_path = "-";
    std::string out_path = "-";
    std::string mode_name = "distance";
    std::string access_name = "unit";
    double eps = 0.1;
    uint64_t r = 1000;
    uint64_t seed = 1;
    bool theory = false;

    [[nodiscard]] slc::CostMode mode() const {
        return mode_name == "similarity" ? slc::CostMode::Similarity
                                         : slc::CostMode::Distance;
    }
    [[nodiscard]] slc::AccessModel access() const {
        return access_name == "prefix" ? slc::AccessModel::PrefixCost
                                       : slc::AccessModel::UnitCost;
    }
    [[nodiscard]] slc::RunConfig config() const {
        slc::RunConfig cfg;
        cfg.params = theory ? slc::ParamMode::Theory : slc::ParamMode::Practical;
        cfg.eps = eps;
        cfg.r = r;
        return cfg;
    }
};

void add_common_options(CLI::App* cmd, CommonOpts& opts, bool with_estimator_flags) {
    cmd->add_option("--graph", opts.cache_path, "binary graph cache produced by ingest");
    cmd->add_option("--in", opts.text_path, "edge-list text input ('-' for stdin)");
    cmd->add_option("--out", opts.out_path, "output path ('-' for stdout)");
    cmd->add_option("--mode", opts.mode_name, "cost mode")
        ->check(CLI::IsMember({"distance", "similarity"}));
    if (with_estimator_flags) {
        cmd->add_option("--eps", opts.eps, "accuracy knob in (0,1)");
        cmd->add_option("--r", opts.r, "samples per estimate (practical mode)");
        cmd->add_option("--seed", opts.seed, "random seed")->envname("SLC_SEED");
        cmd->add_flag("--theory", opts.theory, "derive all sample sizes from eps");
        cmd->add_flag(
            "--practical",
            [&opts](int64_t count) {
                if (count > 0) {
                    opts.theory = false;
                }
            },
            "caller-chosen sample count (default)");
        cmd->add_option("--access-model", opts.access_name, "query charging model")
            ->check(CLI::IsMember({"unit", "prefix"}));
    }
}

int cmd_ingest(const CommonOpts& opts) {
    const slc::IngestResult result = slc::ingest(read_text_input(opts.text_path), opts.eps);
    if (opts.out_path != "-") {
        slc::save_cache(result.graph, opts.out_path);
    }
    nlohmann::json j;
    j["schema"] = 1;
    j["command"] = "ingest";
    j["n"] = result.graph.n();
    j["m"] = result.graph.m();
    j["w"] = result.graph.max_weight();
    j["parsed_n"] = result.parsed_n;
    j["parsed_m"] = result.parsed_m;
    j["weights_scaled"] = result.weights_scaled;
    j["component_extracted"] = result.component_extracted;
    j["cache"] = opts.out_path == "-" ? "" : opts.out_path;
    std::cout << j.dump() << '\n';
    return 0;
}

int cmd_exact(const CommonOpts& opts, const std::string& profile_out, bool normalized) {
    const slc::WeightedGraph g = load_graph(opts.cache_path, opts.text_path, opts.eps);
    const slc::TrialReport rep = slc::run_exact(g, opts.mode());
    if (!profile_out.empty()) {
        const slc::SuccinctProfile profile =
            slc::succinct_from_exact(slc::exact_profile(g, opts.mode()), opts.mode());
        write_output(profile_out, slc::emit_profile_csv(profile, normalized));
    }
    write_output(opts.out_path, rep.to_json() + "\n");
    return 0;
}

int cmd_estimate_cost(const CommonOpts& opts) {
    const slc::WeightedGraph g = load_graph(opts.cache_path, opts.text_path, opts.eps);
    const slc::TrialReport rep =
        slc::run_estimate(g, opts.mode(), opts.access(), opts.config(), opts.seed);
    write_output(opts.out_path, rep.to_json() + "\n");
    return 0;
}

int cmd_estimate_profile(const CommonOpts& opts, bool normalized) {
    const slc::WeightedGraph g = load_graph(opts.cache_path, opts.text_path, opts.eps);
    slc::AccessSession session(g, opts.access());
    slc::Rng rng(opts.seed);
    const slc::SuccinctProfile profile =
        opts.mode() == slc::CostMode::Distance
            ? slc::app_profile(session, opts.config(), rng)
            : slc::app_profile_sim(session, opts.config(), rng);
    write_output(opts.out_path, slc::emit_profile_csv(profile, normalized));

    nlohmann::json j;
    j["schema"] = 1;
    j["command"] = "estimate-profile";
    j["mode"] = opts.mode_name;
    j["n"] = g.n();
    j["entries_scanned"] = profile.entries_scanned;
    j["breakpoints"] = profile.breakpoints.size();
    j["exact_fallback"] = profile.exact_fallback;
    std::cerr << j.dump() << '\n';
    return 0;
}

int cmd_profile_query(const CommonOpts& opts, const std::vector<double>& ks, bool exact) {
    const slc::WeightedGraph g = load_graph(opts.cache_path, opts.text_path, opts.eps);
    slc::SuccinctProfile profile = [&] {
        if (exact) {
            return slc::succinct_from_exact(slc::exact_profile(g, opts.mode()), opts.mode());
        }
        slc::AccessSession session(g, opts.access());
        slc::Rng rng(opts.seed);
        return opts.mode() == slc::CostMode::Distance
                   ? slc::app_profile(session, opts.config(), rng)
                   : slc::app_profile_sim(session, opts.config(), rng);
    }();

    std::ostringstream out;
    for (const double k : ks) {
        const double value = opts.mode() == slc::CostMode::Distance
                                 ? slc::profile_oracle(profile, k)
                                 : slc::profile_oracle_sim(profile, k);
        nlohmann::json j;
        j["k"] = k;
        j["value"] = value;
        out << j.dump() << '\n';
    }
    write_output(opts.out_path, out.str());
    return 0;
}

int cmd_gen_hard(const CommonOpts& opts, uint32_t n, int64_t w, double eps_lb, int family,
                 double avg_degree, uint32_t count) {
    slc::CorpusSpec spec;
    spec.mode = opts.mode();
    spec.n = n;
    spec.w = w;
    spec.eps_lb = eps_lb;
    spec.avg_degree = avg_degree;
    spec.family = family;
    spec.count = count;
    spec.seed = opts.seed;

    uint32_t index = 0;
    for (const slc::HardInstance& inst : slc::gen_corpus(spec)) {
        std::string path = opts.out_path;
        if (path != "-" && count > 1) {
            path += "." + std::to_string(index);
        }
        if (path == "-") {
            std::cout << slc::serialize(inst.graph);
        } else {
            slc::save_cache(inst.graph, path);
        }
        nlohmann::json j;
        j["schema"] = 1;
        j["command"] = "gen-hard";
        j["mode"] = opts.mode_name;
        j["n"] = inst.n;
        j["w"] = inst.w;
        j["eps_lb"] = inst.eps_lb;
        j["family"] = inst.family;
        j["t_w"] = inst.t_w;
        j["closed_form_cost"] = slc::cost_to_string(inst.closed_form);
        j["seed"] = inst.seed;
        j["cache"] = path == "-" ? "" : path;
        std::cerr << j.dump() << '\n';
        ++index;
    }
    return 0;
}

int cmd_bench(const CommonOpts& opts, std::vector<uint64_t> rs, uint32_t num_seeds,
              uint32_t grid, uint32_t threads) {
    const slc::WeightedGraph g = load_graph(opts.cache_path, opts.text_path, opts.eps);
    if (rs.empty()) {
        rs = {100, 1000, 10000};
    }

    struct Combo {
        uint64_t r;
        uint64_t seed;
    };
    std::vector<Combo> combos;
    for (const uint64_t r : rs) {
        for (uint32_t s = 0; s < num_seeds; ++s) {
            combos.push_back({r, opts.seed + s});
        }
    }

    std::vector<slc::ProfileBenchResult> results(combos.size());
    std::vector<char> ran(combos.size(), 0);
    std::atomic<size_t> next{0};
    std::atomic<uint64_t> spent{0};

    auto worker = [&] {
        for (;;) {
            const size_t i = next.fetch_add(1);
            if (i >= combos.size()) {
                return;
            }
            if (spent.load() > kBenchEntryBudget) {
                continue; // budget exhausted: skip remaining combos
            }
            slc::RunConfig cfg = opts.config();
            cfg.r = combos[i].r;
            results[i] = slc::bench_profile_error(g, opts.mode(), cfg, combos[i].seed, grid);
            ran[i] = 1;
            spent.fetch_add(results[i].entries_scanned);
        }
    };

    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (uint32_t t = 0; t < threads; ++t) {
            pool.emplace_back(worker);
        }
        for (std::thread& t : pool) {
            t.join();
        }
    }

    std::ostringstream out;
    for (size_t i = 0; i < combos.size(); ++i) {
        nlohmann::json j;
        j["schema"] = 1;
        j["command"] = "bench";
        j["mode"] = opts.mode_name;
        j["r"] = combos[i].r;
        j["seed"] = combos[i].seed;
        if (ran[i]) {
            j["error_ratio"] = results[i].error_ratio;
            j["entries_scanned"] = results[i].entries_scanned;
            j["wall_ms"] = results[i].wall_ms;
        } else {
            j["skipped"] = "entry budget exhausted";
        }
        out << j.dump() << '\n';
    }
    write_output(opts.out_path, out.str());
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"single-linkage clustering cost estimation"};
    app.require_subcommand(1);

    CommonOpts ingest_opts;
    CLI::App* ingest_cmd = app.add_subcommand("ingest", "parse an edge list into a cache");
    ingest_cmd->add_option("--in", ingest_opts.text_path, "edge-list text ('-' for stdin)");
    ingest_cmd->add_option("--out", ingest_opts.out_path, "cache path ('-' skips caching)");
    ingest_cmd->add_option("--eps", ingest_opts.eps, "grid for non-integer weights");

    CommonOpts exact_opts;
    std::string exact_profile_out;
    bool exact_normalized = false;
    CLI::App* exact_cmd = app.add_subcommand("exact", "exact cost via the spanning oracle");
    add_common_options(exact_cmd, exact_opts, false);
    exact_cmd->add_option("--profile-out", exact_profile_out, "also write the exact profile CSV");
    exact_cmd->add_flag("--normalized", exact_normalized, "normalize profile CSV axes");

    CommonOpts cost_opts;
    CLI::App* cost_cmd = app.add_subcommand("estimate-cost", "sublinear cost estimate");
    add_common_options(cost_cmd, cost_opts, true);

    CommonOpts profile_opts;
    bool profile_normalized = false;
    CLI::App* profile_cmd =
        app.add_subcommand("estimate-profile", "sublinear succinct cost profile");
    add_common_options(profile_cmd, profile_opts, true);
    profile_cmd->add_flag("--normalized", profile_normalized, "normalize profile CSV axes");

    CommonOpts query_opts;
    std::vector<double> query_ks;
    bool query_exact = false;
    CLI::App* query_cmd = app.add_subcommand("profile-query", "profile value at cluster counts");
    add_common_options(query_cmd, query_opts, true);
    query_cmd->add_option("-k,--k", query_ks, "cluster count (repeatable)")->required();
    query_cmd->add_flag("--exact", query_exact, "query the exact profile");

    CommonOpts hard_opts;
    uint32_t hard_n = 1000;
    int64_t hard_w = 50;
    double hard_eps_lb = 0.3;
    int hard_family = 0;
    double hard_d = 4.0;
    uint32_t hard_count = 1;
    CLI::App* hard_cmd = app.add_subcommand("gen-hard", "two-family lower-bound instances");
    hard_cmd->add_option("--out", hard_opts.out_path, "cache path ('-' for text on stdout)");
    hard_cmd->add_option("--mode", hard_opts.mode_name, "cost mode")
        ->check(CLI::IsMember({"distance", "similarity"}));
    hard_cmd->add_option("--n", hard_n, "vertex count")->required();
    hard_cmd->add_option("--w", hard_w, "top weight")->required();
    hard_cmd->add_option("--eps-lb", hard_eps_lb, "family separation parameter");
    hard_cmd->add_option("--family", hard_family, "0 = heavy-rich, 1 = heavy-poor")
        ->check(CLI::Range(0, 1));
    hard_cmd->add_option("--d", hard_d, "target average degree");
    hard_cmd->add_option("--count", hard_count, "instances to generate");
    hard_cmd->add_option("--seed", hard_opts.seed, "random seed")->envname("SLC_SEED");

    CommonOpts bench_opts;
    std::vector<uint64_t> bench_rs;
    uint32_t bench_seeds = 3;
    uint32_t bench_grid = 64;
    uint32_t bench_threads = 1;
    CLI::App* bench_cmd = app.add_subcommand("bench", "profile error vs sample count");
    add_common_options(bench_cmd, bench_opts, true);
    bench_cmd->add_option("--r-list", bench_rs, "sample counts to sweep");
    bench_cmd->add_option("--seeds", bench_seeds, "seeds per sample count");
    bench_cmd->add_option("--grid", bench_grid, "log-spaced query points");
    bench_cmd->add_option("--threads", bench_threads, "worker threads")
        ->envname("SLC_THREADS");

    CLI11_PARSE(app, argc, argv);

    try {
        if (ingest_cmd->parsed()) {
            return cmd_ingest(ingest_opts);
        }
        if (exact_cmd->parsed()) {
            return cmd_exact(exact_opts, exact_profile_out, exact_normalized);
        }
        if (cost_cmd->parsed()) {
            return cmd_estimate_cost(cost_opts);
        }
        if (profile_cmd->parsed()) {
            return cmd_estimate_profile(profile_opts, profile_normalized);
        }
        if (query_cmd->parsed()) {
            return cmd_profile_query(query_opts, query_ks, query_exact);
        }
        if (hard_cmd->parsed()) {
            return cmd_gen_hard(hard_opts, hard_n, hard_w, hard_eps_lb, hard_family, hard_d,
                                hard_count);
        }
        if (bench_cmd->parsed()) {
            return cmd_bench(bench_opts, bench_rs, bench_seeds, bench_grid, bench_threads);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
