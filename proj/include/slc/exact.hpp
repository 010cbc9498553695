#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "slc/graph.hpp"
#include "slc/numeric.hpp"

namespace slc {

struct Disconnected : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct CurveNotDistanceMode : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct CurveNotSimilarityMode : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class SpanMode { Min, Max };
enum class CostMode { Distance, Similarity };

// Union-find with path compression and union by size.
class DisjointSets {
public:
    explicit DisjointSets(uint32_t n) : parent_(n), size_(n, 1), components_(n) {
        for (uint32_t i = 0; i < n; ++i) {
            parent_[i] = i;
        }
    }

    uint32_t find(uint32_t x) {
        uint32_t root = x;
        while (parent_[root] != root) {
            root = parent_[root];
        }
        while (parent_[x] != root) {
            const uint32_t next = parent_[x];
            parent_[x] = root;
            x = next;
        }
        return root;
    }

    // Returns true when the two sets were distinct and got merged.
    bool unite(uint32_t a, uint32_t b) {
        a = find(a);
        b = find(b);
        if (a == b) {
            return false;
        }
        if (size_[a] < size_[b]) {
            std::swap(a, b);
        }
        parent_[b] = a;
        size_[a] += size_[b];
        --components_;
        return true;
    }

    [[nodiscard]] uint32_t components() const { return components_; }

private:
    std::vector<uint32_t> parent_;
    std::vector<uint32_t> size_;
    uint32_t components_;
};

// Sorted spanning-tree weight multiset: non-decreasing for Min (MST),
// non-increasing for Max (MaxST). Exactly n-1 weights; input must be connected.
struct SpanningWeights {
    SpanMode mode;
    std::vector<int64_t> weights;
    cost128 total;
};

// Component counts of the threshold subgraphs, one entry per weight level:
// Distance holds c_j = #components of the "weight <= j" subgraph (j = 1..W),
// non-increasing with c_W = 1 on connected input; Similarity holds
// c_j^(s) = #components of the "weight >= j" subgraph, non-decreasing in j.
struct ComponentCurve {
    CostMode mode;
    uint32_t n;
    std::vector<uint32_t> values; // index j-1 holds the count at threshold j

    [[nodiscard]] uint64_t w() const { return values.size(); }
    [[nodiscard]] uint32_t at(uint64_t j) const { return values.at(j - 1); }
};

[[nodiscard]] bool is_connected(const WeightedGraph& g);

[[nodiscard]] SpanningWeights kruskal(const WeightedGraph& g, SpanMode mode);

[[nodiscard]] ComponentCurve component_curve(const WeightedGraph& g, CostMode mode);

// Total clustering cost Σ_{i=1}^{n-1} (n-i)·w_i over the sorted spanning
// weights (ascending for distance, descending for similarity).
[[nodiscard]] cost128 exact_cost_distance(const WeightedGraph& g);
[[nodiscard]] cost128 exact_cost_similarity(const WeightedGraph& g);

// The component-curve closed forms; must equal the exact costs on every
// connected graph (integer equality).
[[nodiscard]] cost128 formula_cost_distance(const ComponentCurve& curve, uint32_t n);
[[nodiscard]] cost128 formula_cost_similarity(const ComponentCurve& curve, uint32_t n);

// Per-k clustering costs, k = 1..n (index k-1): cost_k = Σ_{i=1}^{n-k} w_i.
[[nodiscard]] std::vector<cost128> exact_profile(const WeightedGraph& g, CostMode mode);

// Spanning-tree totals recovered from the curves:
// MST total = n - W + Σ_{j=1}^{W-1} c_j; MaxST total = Σ_{j=1}^{W} (n - c_j^(s)).
[[nodiscard]] cost128 mst_weight_from_curve(const ComponentCurve& curve, uint32_t n);
[[nodiscard]] cost128 maxst_weight_from_curve(const ComponentCurve& curve, uint32_t n);

// Closed forms for the profile at curve-determined indices:
// distance, k = c_j:      cost_k = n + Σ_{i<j} c_i − c_j·j;
// similarity, k = c_j^(s): cost_k = Σ_{i>j} (n − c_i^(s)) + (n − c_j^(s))·j.
[[nodiscard]] cost128 profile_from_curve_distance(const ComponentCurve& curve, uint32_t n,
                                                  uint64_t j);
[[nodiscard]] cost128 profile_from_curve_similarity(const ComponentCurve& curve, uint32_t n,
                                                    uint64_t j);

} // namespace slc
