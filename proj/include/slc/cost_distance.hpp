#pragma once

#include "slc/cost_types.hpp"
#include "slc/rng.hpp"

namespace slc {

// Sublinear single-linkage cost estimate for a distance graph:
//   cost ≈ n(n-1)/2 + (1/2) Σ_{i=1}^{t-1} (ĵ_{i+1} - ĵ_i)(B_i² - B_i),
// where ĵ_i locates the first weight whose component-count estimate drops to
// B_i. Falls back to the exact formula when W = 1, when n < sqrt(W), and in
// theory mode when eps < sqrt(W)/n or the sampling work would exceed m.
[[nodiscard]] CostEstimate app_cost(AccessSession& session, const RunConfig& config, Rng& rng);

// Succinct cost profile from the same bucket machinery: the approximate cost
// of clustering into B_i clusters is n - B_i·ĵ_i + Σ_{k<i} (ĵ_{k+1} - ĵ_k)B_k
// (zero at B_1 = n).
[[nodiscard]] SuccinctProfile app_profile(AccessSession& session, const RunConfig& config,
                                          Rng& rng);

// Profile value at cluster count k in [1, n] (largest breakpoint <= k).
[[nodiscard]] double profile_oracle(const SuccinctProfile& profile, double k);

} // namespace slc
