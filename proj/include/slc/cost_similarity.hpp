#pragma once

#include "slc/cost_types.hpp"
#include "slc/rng.hpp"

namespace slc {

// Everything the similarity cost aggregation consumes: the discretization,
// the per-endpoint searches over the D-value sequence, and one component
// count estimate per weight level.
struct SimCostInputs {
    DiscretizationScheme scheme;
    BucketIndexVector j_hat;
    std::vector<double> c_hat; // ĉ_j for j = 1..w (index j-1)
};

// (1/2) Σ_j (ĉ_j + n - 1)·D̄_j with D̄_j = B_i for j in bucket i, grouped by
// bucket so each endpoint multiplies one partial sum.
[[nodiscard]] double similarity_cost_from_inputs(const SimCostInputs& inputs, uint32_t n);

// Sublinear single-linkage cost estimate for a similarity graph. Falls back
// to the exact formula when W > n or W <= 10.
[[nodiscard]] CostEstimate app_cost_sim(AccessSession& session, const RunConfig& config,
                                        Rng& rng);

// Succinct similarity cost profile: the approximate cost of clustering into
// n - B_i clusters is B_i(ĵ_i - 1) + Σ_{k=i}^{t-1} (ĵ_{k+1} - ĵ_k)B_k
// (zero at n - B_t = n).
[[nodiscard]] SuccinctProfile app_profile_sim(AccessSession& session, const RunConfig& config,
                                              Rng& rng);

// Profile value at cluster count k in [1, n] (largest breakpoint <= k).
[[nodiscard]] double profile_oracle_sim(const SuccinctProfile& profile, double k);

} // namespace slc
