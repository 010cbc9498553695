#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "slc/graph.hpp"
#include "slc/rng.hpp"

namespace slc {

struct KTooSmall : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Sampling parameters shared by the component-count and D estimators.
//
// theory() derives everything from (eps, k, avg degree, delta):
//   r = ceil(64k/eps²), gamma = ceil(4k/eps), d_cap = avg_degree·gamma.
// practical() takes a caller-chosen sample count and uses gamma = ceil(sqrt(r·k))
// with a d_cap the caller obtained (typically from estimate_degree_cap).
struct EstimatorParams {
    double eps = 0.5;
    double k = 1.0;
    uint64_t r = 0;
    uint64_t gamma = 0;
    double d_cap = 0.0;
    double delta = 0.25;

    static EstimatorParams theory(double eps, double k, double avg_degree, double delta);
    static EstimatorParams practical(uint64_t r, double k, double d_cap, double delta = 0.25);

    void validate() const;
};

// Component-count estimate. `value` is clamped to [1, n]; `raw` is the
// unclamped estimator output; `trials` holds the raw value of every
// independent instance that entered the median (a single entry for an
// unamplified run).
struct CcEstimate {
    double value = 0.0;
    double raw = 0.0;
    EstimatorParams params;
    std::vector<double> trials;
};

enum class DBranch {
    IsolatedBranch, // D̂ = n̂' − ĉ' (few non-isolated vertices)
    ComponentBranch // D̂ = n − ĉ
};

// Estimate of D = n − c for a similarity threshold view. `value` clamped to
// [0, n−1]; `branch` records which output formula produced the (median) value.
struct DEstimate {
    double value = 0.0;
    double raw = 0.0;
    DBranch branch = DBranch::ComponentBranch;
    EstimatorParams params;
    std::vector<double> trials;
};

namespace detail {

enum class CoinPolicy { Fair, AlwaysHeads };

// One sampled-vertex exploration: a breadth-first scan of the implicit
// threshold component of u whose scanned-entry budget starts at deg_G(u) and
// doubles after each surviving fair-coin flip.
struct BetaTrialResult {
    double beta = 0.0;
    uint64_t entries_scanned = 0; // this trial's own scan count (= component
                                  // volume when the exploration completed)
    uint32_t flips = 0;
    bool completed = false;
    bool isolated = false; // u had no neighbor passing the threshold
    bool cap_aborted = false;
};

// Scratch space reused across trials so each trial is O(vertices touched),
// not O(n). Vertices are stamped with an epoch instead of being cleared.
struct ExploreWorkspace {
    std::vector<uint32_t> mark;
    std::vector<uint64_t> cursor;
    std::vector<uint32_t> order;
    uint32_t epoch = 0;

    void ensure(uint32_t n);
    void begin_trial();
};

BetaTrialResult beta_trial(const ThresholdView& view, uint32_t u, uint64_t gamma,
                           double d_cap, Rng& rng, CoinPolicy policy,
                           ExploreWorkspace& ws);

// Convenience overload with its own workspace (tests, one-off calls).
BetaTrialResult beta_trial(const ThresholdView& view, uint32_t u, uint64_t gamma,
                           double d_cap, Rng& rng,
                           CoinPolicy policy = CoinPolicy::Fair);

} // namespace detail

// Single-instance component-count estimator: ĉ = (n/r)·Σ β_i with the
// coin-gated doubling exploration per sampled vertex. Quality target
// |ĉ − c| ≤ eps·max{n/k, c} with probability ≥ 7/8 at theory parameters.
[[nodiscard]] CcEstimate estimate_cc(const ThresholdView& view, const EstimatorParams& params,
                                     Rng& rng,
                                     detail::CoinPolicy policy = detail::CoinPolicy::Fair);

// Median amplification: ⌈8·ln(1/δ)⌉ (forced odd) independent instances,
// median of the raw values, clamped. Failure probability ≤ δ.
[[nodiscard]] CcEstimate estimate_cc_median(const ThresholdView& view,
                                            const EstimatorParams& params, Rng& rng);

// Two-phase estimator for D = n − c on an at-least (similarity) view:
// phase 1 estimates the non-isolated vertex count n̂', phase 2 runs the β/α
// exploration; the smaller-variance branch is returned. Requires k ≥ 10.
[[nodiscard]] DEstimate estimate_D_sim(const ThresholdView& view, const EstimatorParams& params,
                                       Rng& rng);

[[nodiscard]] DEstimate estimate_D_median(const ThresholdView& view,
                                          const EstimatorParams& params, Rng& rng);

// Samples 2·gamma vertices with replacement and returns the maximum degree
// observed — the degree-cap surrogate when the average degree is unknown.
[[nodiscard]] uint32_t estimate_degree_cap(AccessSession& session, uint64_t gamma, Rng& rng);

} // namespace slc
