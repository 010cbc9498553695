#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "slc/exact.hpp" // CostMode

namespace slc {

// Lazily evaluated, memoized sequence x̂_1..x̂_w plus a fixed sentinel at
// index w+1. Memoization matters: every binary search against the same
// logical sequence must observe identical values, otherwise the searches'
// results need not be monotone in the threshold.
class EstimateSequence {
public:
    EstimateSequence(uint32_t w, double sentinel, std::function<double(uint32_t)> eval)
        : w_(w), sentinel_(sentinel), eval_(std::move(eval)) {
        if (w_ == 0) {
            throw std::runtime_error("estimate sequence needs w >= 1");
        }
    }

    // Fixed-vector sequence (tests, exact plug-ins). values[0] is x̂_1.
    static EstimateSequence from_values(std::vector<double> values, double sentinel);

    // j in [1, w+1]; j == w+1 returns the sentinel without an evaluation.
    [[nodiscard]] double at(uint32_t j);

    [[nodiscard]] uint32_t w() const { return w_; }
    [[nodiscard]] double sentinel() const { return sentinel_; }

    // Number of distinct indices in [1, w] whose value has been computed.
    [[nodiscard]] uint64_t evaluations() const { return cache_.size(); }

private:
    uint32_t w_;
    double sentinel_;
    std::function<double(uint32_t)> eval_;
    std::unordered_map<uint32_t, double> cache_;
};

// Noisy binary search for the first index whose (memoized) value drops to
// `bound` or below: maintains [l, r] over [1, w+1], probing m = ⌊(l+r)/2⌋ and
// keeping [l, m] when x̂_m <= bound, else [m+1, r]. On a fixed memoized
// sequence the result is non-increasing in `bound`, monotone or not.
[[nodiscard]] uint32_t binary_search(EstimateSequence& seq, double bound);

// Which construction segment an endpoint came from (diagnostic only).
enum class SegmentTag {
    Top,             // pinned first endpoint
    Geometric,       // geometric decay segment
    Linear,          // first linear segment
    GeometricSecond, // second geometric segment (similarity only)
    LinearSecond,    // second linear segment (similarity only)
    Bottom           // pinned last endpoint
};

// Strictly decreasing threshold endpoints B_1 > ... > B_t used to bucket the
// weight axis by estimate magnitude.
struct DiscretizationScheme {
    CostMode mode = CostMode::Distance;
    uint32_t n = 0;
    int64_t w = 0;
    double eps = 0.0;
    std::vector<double> endpoints; // B_1..B_t
    std::vector<SegmentTag> tags;  // parallel to endpoints

    [[nodiscard]] uint32_t t() const { return static_cast<uint32_t>(endpoints.size()); }
    [[nodiscard]] double at(uint32_t i) const { return endpoints.at(i - 1); } // 1-indexed

    void validate() const;
};

// Component-count endpoints for distance cost: geometric from n down to
// about n/sqrt(w), then linear down to about eps·n/sqrt(w), then 1.
[[nodiscard]] DiscretizationScheme make_endpoints_distance(uint32_t n, int64_t w, double eps);

// D-value endpoints for similarity cost: n-1, a linear segment below n, two
// geometric segments through n/2, a linear segment near n/w, then 0.
[[nodiscard]] DiscretizationScheme make_endpoints_similarity(uint32_t n, int64_t w, double eps);

// A scheme is valid for (x, tol) when, for every j in [1, w] and every bucket
// index i in [1, t] with B_{i+1} <= x_j <= B_i (B_{t+1} = -inf), the tolerance
// clears the neighboring gaps: tol_j < B_{i-1} - B_i when i >= 2 and
// tol_j < B_{i+1} - B_{i+2} when i <= t-2. x and tol are indexed by j-1.
[[nodiscard]] bool check_valid_discretization(const DiscretizationScheme& scheme,
                                              const std::vector<double>& x,
                                              const std::vector<double>& tol);

// Search outputs ĵ_1 <= ... <= ĵ_t: ĵ_i is the binary-search answer for
// bound B_i, except ĵ_t which is pinned to w+1 (the bottom endpoint needs no
// probes). Bucket i covers weights {ĵ_i, ..., ĵ_{i+1} - 1}.
struct BucketIndexVector {
    std::vector<uint32_t> j_hat; // size t, 1-indexed via j(i)

    [[nodiscard]] uint32_t t() const { return static_cast<uint32_t>(j_hat.size()); }
    [[nodiscard]] uint32_t j(uint32_t i) const { return j_hat.at(i - 1); }
};

[[nodiscard]] BucketIndexVector bucket_search(EstimateSequence& seq,
                                              const DiscretizationScheme& scheme);

} // namespace slc
