#pragma once

#include <cstdint>
#include <vector>

#include "slc/estimator.hpp"
#include "slc/search.hpp"

namespace slc {

// Theory: sample counts, caps and amplification are derived from eps alone.
// Practical: the caller picks a per-estimate sample count r, the exploration
// cap is sqrt(r·k), the degree cap is sampled, and no median amplification
// is applied.
enum class ParamMode { Theory, Practical };

struct RunConfig {
    ParamMode params = ParamMode::Practical;
    double eps = 0.1;  // accuracy knob: discretization granularity, and in
                       // theory mode every derived sample size
    uint64_t r = 1000; // per-estimate samples (practical mode only)
};

// Sublinear cost estimate plus everything needed to audit it.
struct CostEstimate {
    double value = 0.0;
    CostMode mode = CostMode::Distance;
    double eps = 0.0;
    uint64_t entries_scanned = 0;   // adjacency entries charged to this run
    uint64_t num_cj_estimated = 0;  // distinct per-threshold estimates computed
    BucketIndexVector j_hat;
    DiscretizationScheme scheme;
    bool exact_fallback = false; // true when the whole graph was scanned instead
};

// Piecewise-constant approximation of the cost-vs-cluster-count profile:
// value(k) for k in [1, n] is the value at the largest breakpoint <= k.
// Breakpoints ascend; the last breakpoint always carries value 0 (clustering
// into n singletons is free).
struct SuccinctProfile {
    CostMode mode = CostMode::Distance;
    uint32_t n = 0;
    double eps = 0.0;
    uint64_t entries_scanned = 0;
    std::vector<double> breakpoints;
    std::vector<double> values;
    bool exact_fallback = false;

    [[nodiscard]] double lookup(double k) const;
};

// Dense succinct profile built from exact per-k costs (index k-1 holds the
// cost of clustering into k clusters).
[[nodiscard]] SuccinctProfile succinct_from_exact(const std::vector<cost128>& profile,
                                                  CostMode mode, double eps = 0.0);

namespace detail {

// Reads every adjacency entry through the session (charging it) and returns
// each undirected edge once. Backs the exact fallback paths.
std::vector<Edge> metered_full_scan(AccessSession& session);

} // namespace detail

} // namespace slc
