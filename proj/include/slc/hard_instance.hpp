#pragma once

#include <cstdint>
#include <vector>

#include "slc/exact.hpp"
#include "slc/graph.hpp"
#include "slc/rng.hpp"

namespace slc {

// Two-family lower-bound instance: a Hamiltonian path whose edges carry
// weight W independently with probability q(1 ± eps_lb) (family 0 = plus,
// family 1 = minus) and weight 1 otherwise, padded with cost-neutral edges so
// every degree lands in {floor(d), ceil(d)}. The number of heavy path edges
// t_w pins the exact cost through a closed form.
struct HardInstance {
    WeightedGraph graph;
    CostMode mode = CostMode::Distance;
    uint32_t n = 0;
    int64_t w = 0;
    double eps_lb = 0.0;
    int family = 0;
    uint64_t t_w = 0;
    cost128 closed_form = 0;
    uint64_t seed = 0;
};

// Exact cost of a padded two-weight path with t_w heavy edges:
//   distance:   (n(n-1) + (W-1)(t_w² + t_w)) / 2
//   similarity: (n(n-1) + (W-1)·t_w·(2n-1-t_w)) / 2
// Both are integers for every t_w.
[[nodiscard]] cost128 closed_form_cost(CostMode mode, uint32_t n, int64_t w, uint64_t t_w);

// Samples one instance. Heavy-edge probability q is 1/sqrt(W-1) for distance
// and 1/(W-1) for similarity; eps_lb must stay below 1/2 and above the
// separability floor (W^{1/4}/sqrt(40n) distance, sqrt(W/(40n)) similarity).
// Padding edges weigh W for distance and 1 for similarity, so the spanning
// weight multiset — hence the cost — is untouched.
[[nodiscard]] HardInstance gen_hard_instance(CostMode mode, uint32_t n, int64_t w,
                                             double eps_lb, int family, double avg_degree,
                                             uint64_t seed);

// A batch of instances drawn with consecutive child seeds.
struct CorpusSpec {
    CostMode mode = CostMode::Distance;
    uint32_t n = 0;
    int64_t w = 0;
    double eps_lb = 0.0;
    double avg_degree = 4.0;
    int family = 0;
    uint32_t count = 1;
    uint64_t seed = 0;
};

[[nodiscard]] std::vector<HardInstance> gen_corpus(const CorpusSpec& spec);

} // namespace slc
