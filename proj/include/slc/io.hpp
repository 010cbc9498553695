#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "slc/cost_types.hpp"
#include "slc/graph.hpp"

namespace slc {

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct CacheFormatError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Text ingestion result. The graph is the largest connected component of the
// parsed edge list, relabeled to 0..n-1 preserving original id order.
struct IngestResult {
    WeightedGraph graph;
    uint32_t parsed_n = 0;       // vertex count before component extraction
    uint64_t parsed_m = 0;       // edge count before component extraction
    bool weights_scaled = false; // non-integer weights were mapped to max(1, floor(w/eps))
    bool component_extracted = false;
};

// Parses "u v w" lines (blank lines and '#' comments skipped). Integer
// weights are taken as-is; if any weight is non-integral, every weight is
// rescaled to max(1, floor(w/eps)).
[[nodiscard]] IngestResult ingest(const std::string& text, double eps = 0.1);

// Plain-text edge list; ingest(serialize(g)).graph == g for connected g.
[[nodiscard]] std::string serialize(const WeightedGraph& g);

// Binary graph cache (magic "SLCS1", little-endian CSR dump).
void save_cache(const WeightedGraph& g, const std::string& path);
[[nodiscard]] WeightedGraph load_cache(const std::string& path);

// One estimator or oracle run, serializable as single-line JSON (schema 1).
// Deterministic for a fixed (graph, config, seed) except wall_ms.
struct TrialReport {
    int schema = 1;
    std::string command;      // "estimate-cost" | "exact" | ...
    std::string mode;         // "distance" | "similarity"
    std::string params;       // "theory" | "practical" | "exact"
    std::string access_model; // "unit" | "prefix"
    uint32_t n = 0;
    uint64_t m = 0;
    int64_t w = 0;
    double eps = 0.0;
    uint64_t r = 0;
    uint64_t seed = 0;
    double value = 0.0;
    bool exact_fallback = false;
    uint64_t entries_scanned = 0;
    uint64_t num_estimates = 0;
    double wall_ms = 0.0;

    [[nodiscard]] std::string to_json() const;
};

[[nodiscard]] TrialReport run_estimate(const WeightedGraph& g, CostMode mode,
                                       AccessModel access, const RunConfig& config,
                                       uint64_t seed);

// Exact cost via the spanning-tree oracle; charged as one full scan (2m
// entries under unit cost).
[[nodiscard]] TrialReport run_exact(const WeightedGraph& g, CostMode mode);

// CSV rows "k,cost" over the profile breakpoints (ascending k). Normalized
// emits "k_over_n,cost_over_max" with the k = 1 value as the unit.
[[nodiscard]] std::string emit_profile_csv(const SuccinctProfile& profile,
                                           bool normalized = false);

// Profile accuracy probe: estimated vs exact profile on a log-spaced grid of
// cluster counts; error_ratio = Σ|est - exact| / Σ exact over the grid.
struct ProfileBenchResult {
    uint64_t r = 0;
    uint64_t seed = 0;
    double error_ratio = 0.0;
    uint64_t entries_scanned = 0;
    double wall_ms = 0.0;
};

[[nodiscard]] ProfileBenchResult bench_profile_error(const WeightedGraph& g, CostMode mode,
                                                     const RunConfig& config, uint64_t seed,
                                                     uint32_t grid_points = 64);

} // namespace slc
