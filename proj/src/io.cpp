#include "slc/io.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include "json.hpp"

#include "slc/cost_distance.hpp"
#include "slc/cost_similarity.hpp"
#include "slc/exact.hpp"

namespace slc {

namespace {

constexpr char kCacheMagic[5] = {'S', 'L', 'C', 'S', '1'};

struct ParsedEdge {
    uint32_t u;
    uint32_t v;
    double w;
};

double elapsed_ms(std::chrono::steady_clock::time_point start) {
    const auto d = std::chrono::steady_clock::now() - start;
    return std::chrono::duration<double, std::milli>(d).count();
}

} // namespace

IngestResult ingest(const std::string& text, double eps) {
    if (!(eps > 0.0 && eps < 1.0)) {
        throw ParseError("ingest needs eps in (0,1)");
    }
    std::vector<ParsedEdge> parsed;
    bool all_integral = true;
    uint32_t max_id = 0;

    std::istringstream in(text);
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const size_t first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') {
            continue;
        }
        std::istringstream ls(line);
        long long u = -1;
        long long v = -1;
        double w = 0.0;
        if (!(ls >> u >> v >> w) || u < 0 || v < 0) {
            throw ParseError("line " + std::to_string(line_no) +
                             ": expected 'u v w' with non-negative vertex ids");
        }
        std::string trailing;
        if (ls >> trailing) {
            throw ParseError("line " + std::to_string(line_no) + ": unexpected trailing token");
        }
        if (!(w > 0.0)) {
            throw ParseError("line " + std::to_string(line_no) + ": weight must be positive");
        }
        if (w != std::floor(w)) {
            all_integral = false;
        }
        parsed.push_back({static_cast<uint32_t>(u), static_cast<uint32_t>(v), w});
        max_id = std::max({max_id, static_cast<uint32_t>(u), static_cast<uint32_t>(v)});
    }
    if (parsed.empty()) {
        throw ParseError("no edges found");
    }

    // Non-integral inputs are snapped onto the integer weight grid 1/eps.
    std::vector<Edge> edges;
    edges.reserve(parsed.size());
    for (const ParsedEdge& e : parsed) {
        const int64_t w = all_integral
                              ? static_cast<int64_t>(e.w)
                              : std::max<int64_t>(1, static_cast<int64_t>(std::floor(e.w / eps)));
        edges.push_back({e.u, e.v, w});
    }

    // Keep the largest connected component, relabeled in ascending id order.
    const uint32_t parsed_n = max_id + 1;
    DisjointSets ds(parsed_n);
    for (const Edge& e : edges) {
        if (e.u != e.v) {
            ds.unite(e.u, e.v);
        }
    }
    std::unordered_map<uint32_t, uint32_t> root_size;
    for (uint32_t v = 0; v <= max_id; ++v) {
        ++root_size[ds.find(v)];
    }
    uint32_t best_root = 0;
    uint32_t best_size = 0;
    for (uint32_t v = 0; v <= max_id; ++v) {
        const uint32_t root = ds.find(v);
        const uint32_t size = root_size[root];
        if (size > best_size || (size == best_size && root < best_root)) {
            best_root = root;
            best_size = size;
        }
    }

    std::vector<uint32_t> relabel(parsed_n, UINT32_MAX);
    uint32_t next_id = 0;
    for (uint32_t v = 0; v <= max_id; ++v) {
        if (ds.find(v) == best_root) {
            relabel[v] = next_id++;
        }
    }
    std::vector<Edge> kept;
    kept.reserve(edges.size());
    for (const Edge& e : edges) {
        if (relabel[e.u] != UINT32_MAX && relabel[e.v] != UINT32_MAX) {
            kept.push_back({relabel[e.u], relabel[e.v], e.w});
        }
    }

    IngestResult out{WeightedGraph::build(kept, next_id), parsed_n, edges.size(),
                     !all_integral, best_size < parsed_n};
    return out;
}

std::string serialize(const WeightedGraph& g) {
    std::ostringstream out;
    for (const Edge& e : g.edge_list()) {
        out << e.u << ' ' << e.v << ' ' << e.w << '\n';
    }
    return out.str();
}

namespace {

template <typename T>
void write_pod(std::ostream& out, const T& value) {
    out.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <typename T>
void write_vec(std::ostream& out, const std::vector<T>& values) {
    out.write(reinterpret_cast<const char*>(values.data()),
              static_cast<std::streamsize>(values.size() * sizeof(T)));
}

template <typename T>
T read_pod(std::istream& in) {
    T value;
    in.read(reinterpret_cast<char*>(&value), sizeof(T));
    if (!in) {
        throw CacheFormatError("truncated graph cache");
    }
    return value;
}

template <typename T>
std::vector<T> read_vec(std::istream& in, size_t count) {
    std::vector<T> values(count);
    in.read(reinterpret_cast<char*>(values.data()),
            static_cast<std::streamsize>(count * sizeof(T)));
    if (!in) {
        throw CacheFormatError("truncated graph cache");
    }
    return values;
}

} // namespace

void save_cache(const WeightedGraph& g, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw CacheFormatError("cannot open cache file for writing: " + path);
    }
    out.write(kCacheMagic, sizeof(kCacheMagic));
    write_pod(out, g.n());
    write_pod(out, g.m());
    write_pod(out, g.max_weight());
    write_vec(out, g.offsets());
    write_vec(out, g.neighbors());
    write_vec(out, g.weights());
    if (!out) {
        throw CacheFormatError("failed writing cache file: " + path);
    }
}

WeightedGraph load_cache(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw CacheFormatError("cannot open cache file: " + path);
    }
    char magic[sizeof(kCacheMagic)];
    in.read(magic, sizeof(magic));
    if (!in || std::memcmp(magic, kCacheMagic, sizeof(magic)) != 0) {
        throw CacheFormatError("not a graph cache (bad magic)");
    }
    const auto n = read_pod<uint32_t>(in);
    const auto m = read_pod<uint64_t>(in);
    const auto w_max = read_pod<int64_t>(in);
    auto offsets = read_vec<uint64_t>(in, static_cast<size_t>(n) + 1);
    auto neighbors = read_vec<uint32_t>(in, 2 * m);
    auto weights = read_vec<int64_t>(in, 2 * m);
    return WeightedGraph::from_csr(n, m, w_max, std::move(offsets), std::move(neighbors),
                                   std::move(weights));
}

std::string TrialReport::to_json() const {
    nlohmann::json j;
    j["schema"] = schema;
    j["command"] = command;
    j["mode"] = mode;
    j["params"] = params;
    j["access_model"] = access_model;
    j["n"] = n;
    j["m"] = m;
    j["w"] = w;
    j["eps"] = eps;
    j["r"] = r;
    j["seed"] = seed;
    j["value"] = value;
    j["exact_fallback"] = exact_fallback;
    j["entries_scanned"] = entries_scanned;
    j["num_estimates"] = num_estimates;
    j["wall_ms"] = wall_ms;
    return j.dump();
}

namespace {

TrialReport report_shell(const WeightedGraph& g, CostMode mode) {
    TrialReport rep;
    rep.mode = mode == CostMode::Distance ? "distance" : "similarity";
    rep.n = g.n();
    rep.m = g.m();
    rep.w = g.max_weight();
    return rep;
}

} // namespace

TrialReport run_estimate(const WeightedGraph& g, CostMode mode, AccessModel access,
                         const RunConfig& config, uint64_t seed) {
    const auto start = std::chrono::steady_clock::now();
    AccessSession session(g, access);
    Rng rng(seed);
    const CostEstimate est = mode == CostMode::Distance ? app_cost(session, config, rng)
                                                        : app_cost_sim(session, config, rng);

    TrialReport rep = report_shell(g, mode);
    rep.command = "estimate-cost";
    rep.params = config.params == ParamMode::Theory ? "theory" : "practical";
    rep.access_model = access == AccessModel::UnitCost ? "unit" : "prefix";
    rep.eps = config.eps;
    rep.r = config.params == ParamMode::Practical ? config.r : 0;
    rep.seed = seed;
    rep.value = est.value;
    rep.exact_fallback = est.exact_fallback;
    rep.entries_scanned = est.entries_scanned;
    rep.num_estimates = est.num_cj_estimated;
    rep.wall_ms = elapsed_ms(start);
    return rep;
}

TrialReport run_exact(const WeightedGraph& g, CostMode mode) {
    const auto start = std::chrono::steady_clock::now();
    const cost128 value =
        mode == CostMode::Distance ? exact_cost_distance(g) : exact_cost_similarity(g);

    TrialReport rep = report_shell(g, mode);
    rep.command = "exact";
    rep.params = "exact";
    rep.access_model = "unit";
    rep.value = cost_to_double(value);
    rep.entries_scanned = 2 * g.m(); // one full adjacency scan
    rep.wall_ms = elapsed_ms(start);
    return rep;
}

namespace {

std::string format_number(double x) {
    std::ostringstream out;
    out.precision(10);
    out << x;
    return out.str();
}

} // namespace

std::string emit_profile_csv(const SuccinctProfile& profile, bool normalized) {
    std::ostringstream out;
    if (normalized) {
        const double unit = profile.values.empty() || profile.values.front() == 0.0
                                ? 1.0
                                : profile.values.front();
        out << "k_over_n,cost_over_max\n";
        for (size_t i = 0; i < profile.breakpoints.size(); ++i) {
            out << format_number(profile.breakpoints[i] / static_cast<double>(profile.n))
                << ',' << format_number(profile.values[i] / unit) << '\n';
        }
    } else {
        out << "k,cost\n";
        for (size_t i = 0; i < profile.breakpoints.size(); ++i) {
            out << format_number(profile.breakpoints[i]) << ','
                << format_number(profile.values[i]) << '\n';
        }
    }
    return out.str();
}

ProfileBenchResult bench_profile_error(const WeightedGraph& g, CostMode mode,
                                       const RunConfig& config, uint64_t seed,
                                       uint32_t grid_points) {
    if (grid_points < 2) {
        throw std::runtime_error("profile bench needs at least 2 grid points");
    }
    const auto start = std::chrono::steady_clock::now();
    const std::vector<cost128> exact = exact_profile(g, mode);

    AccessSession session(g);
    Rng rng(seed);
    const SuccinctProfile profile = mode == CostMode::Distance
                                        ? app_profile(session, config, rng)
                                        : app_profile_sim(session, config, rng);

    // Log-spaced cluster counts from 1 to n.
    const uint32_t n = g.n();
    const double factor =
        std::pow(static_cast<double>(n), 1.0 / static_cast<double>(grid_points - 1));
    double err_sum = 0.0;
    double exact_sum = 0.0;
    double kd = 1.0;
    uint32_t prev = 0;
    for (uint32_t p = 0; p < grid_points; ++p, kd *= factor) {
        const uint32_t k = std::min(n, std::max(prev + 1, static_cast<uint32_t>(kd)));
        if (k <= prev) {
            break;
        }
        prev = k;
        const double est = profile.lookup(k);
        const double ex = cost_to_double(exact[k - 1]);
        err_sum += std::abs(est - ex);
        exact_sum += ex;
    }

    ProfileBenchResult res;
    res.r = config.r;
    res.seed = seed;
    res.error_ratio = exact_sum > 0.0 ? err_sum / exact_sum : 0.0;
    res.entries_scanned = profile.entries_scanned;
    res.wall_ms = elapsed_ms(start);
    return res;
}

} // namespace slc
