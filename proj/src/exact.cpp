#include "slc/exact.hpp"

#include <algorithm>

namespace slc {

namespace {

constexpr uint64_t kMaxCurveWidth = 10'000'000;

// Edge indices sorted by weight (stable, so ties keep list order).
std::vector<uint32_t> sorted_edge_order(const std::vector<Edge>& edges, bool ascending) {
    std::vector<uint32_t> order(edges.size());
    for (uint32_t i = 0; i < order.size(); ++i) {
        order[i] = i;
    }
    std::stable_sort(order.begin(), order.end(), [&](uint32_t a, uint32_t b) {
        return ascending ? edges[a].w < edges[b].w : edges[a].w > edges[b].w;
    });
    return order;
}

void require_mode(const ComponentCurve& curve, CostMode mode) {
    if (curve.mode != mode) {
        if (mode == CostMode::Distance) {
            throw CurveNotDistanceMode("component curve is not distance-mode");
        }
        throw CurveNotSimilarityMode("component curve is not similarity-mode");
    }
}

} // namespace

bool is_connected(const WeightedGraph& g) {
    if (g.n() <= 1) {
        return true;
    }
    DisjointSets ds(g.n());
    for (uint32_t v = 0; v < g.n(); ++v) {
        for (uint32_t i = 0; i < g.degree_raw(v); ++i) {
            ds.unite(v, g.entry_raw(v, i).neighbor);
        }
    }
    return ds.components() == 1;
}

SpanningWeights kruskal(const WeightedGraph& g, SpanMode mode) {
    const std::vector<Edge> edges = g.edge_list();
    const std::vector<uint32_t> order = sorted_edge_order(edges, mode == SpanMode::Min);

    SpanningWeights out{mode, {}, 0};
    out.weights.reserve(g.n() > 0 ? g.n() - 1 : 0);
    DisjointSets ds(g.n());
    for (const uint32_t idx : order) {
        const Edge& e = edges[idx];
        if (ds.unite(e.u, e.v)) {
            out.weights.push_back(e.w);
            out.total = checked_add(out.total, e.w);
        }
    }
    if (g.n() > 0 && out.weights.size() != g.n() - 1) {
        throw Disconnected("spanning tree requires a connected graph");
    }
    return out;
}

ComponentCurve component_curve(const WeightedGraph& g, CostMode mode) {
    const uint64_t w_max = static_cast<uint64_t>(std::max<int64_t>(g.max_weight(), 0));
    if (w_max > kMaxCurveWidth) {
        throw std::runtime_error("component curve materialization needs W <= 1e7");
    }

    const std::vector<Edge> edges = g.edge_list();
    ComponentCurve curve{mode, g.n(), std::vector<uint32_t>(w_max, 0)};
    DisjointSets ds(g.n());

    if (mode == CostMode::Distance) {
        // Sweep thresholds upward: after inserting every edge of weight <= j,
        // the live component count is c_j.
        const std::vector<uint32_t> order = sorted_edge_order(edges, true);
        size_t p = 0;
        for (uint64_t j = 1; j <= w_max; ++j) {
            while (p < order.size() && edges[order[p]].w <= static_cast<int64_t>(j)) {
                ds.unite(edges[order[p]].u, edges[order[p]].v);
                ++p;
            }
            curve.values[j - 1] = ds.components();
        }
    } else {
        // Sweep thresholds downward for the "weight >= j" subgraphs.
        const std::vector<uint32_t> order = sorted_edge_order(edges, false);
        size_t p = 0;
        for (uint64_t j = w_max; j >= 1; --j) {
            while (p < order.size() && edges[order[p]].w >= static_cast<int64_t>(j)) {
                ds.unite(edges[order[p]].u, edges[order[p]].v);
                ++p;
            }
            curve.values[j - 1] = ds.components();
        }
    }
    return curve;
}

namespace {

cost128 cost_from_spanning(const SpanningWeights& sw, uint32_t n) {
    // Σ (n - i)·w_i over the sorted weights, i = 1..n-1.
    cost128 total = 0;
    for (size_t i = 0; i < sw.weights.size(); ++i) {
        const cost128 rank = static_cast<cost128>(n) - static_cast<cost128>(i + 1);
        total = checked_add(total, checked_mul(rank, sw.weights[i]));
    }
    return total;
}

} // namespace

cost128 exact_cost_distance(const WeightedGraph& g) {
    return cost_from_spanning(kruskal(g, SpanMode::Min), g.n());
}

cost128 exact_cost_similarity(const WeightedGraph& g) {
    return cost_from_spanning(kruskal(g, SpanMode::Max), g.n());
}

cost128 formula_cost_distance(const ComponentCurve& curve, uint32_t n) {
    require_mode(curve, CostMode::Distance);
    const cost128 nn = static_cast<cost128>(n);
    cost128 total = checked_mul(nn, nn - 1) / 2;
    // Σ_{j=1}^{W-1} c_j(c_j - 1)/2 — the j = W term is always zero on
    // connected input (c_W = 1) and is excluded by definition.
    for (uint64_t j = 1; j + 1 <= curve.w(); ++j) {
        const cost128 c = curve.at(j);
        total = checked_add(total, checked_mul(c, c - 1) / 2);
    }
    return total;
}

cost128 formula_cost_similarity(const ComponentCurve& curve, uint32_t n) {
    require_mode(curve, CostMode::Similarity);
    const cost128 nn = static_cast<cost128>(n);
    cost128 total = 0;
    for (uint64_t j = 1; j <= curve.w(); ++j) {
        const cost128 c = curve.at(j);
        total = checked_add(total, checked_mul(c + nn - 1, nn - c) / 2);
    }
    return total;
}

std::vector<cost128> exact_profile(const WeightedGraph& g, CostMode mode) {
    const SpanningWeights sw =
        kruskal(g, mode == CostMode::Distance ? SpanMode::Min : SpanMode::Max);
    const uint32_t n = g.n();
    std::vector<cost128> profile(n, 0);
    // cost_k = Σ_{i=1}^{n-k} w_i; fill from k = n (empty sum) downward.
    cost128 acc = 0;
    for (uint32_t k = n; k >= 1; --k) {
        profile[k - 1] = acc;
        const uint32_t i = n - k + 1; // next weight index when k decreases
        if (i <= sw.weights.size()) {
            acc = checked_add(acc, sw.weights[i - 1]);
        }
    }
    return profile;
}

cost128 mst_weight_from_curve(const ComponentCurve& curve, uint32_t n) {
    require_mode(curve, CostMode::Distance);
    cost128 total = static_cast<cost128>(n) - static_cast<cost128>(curve.w());
    for (uint64_t j = 1; j + 1 <= curve.w(); ++j) {
        total = checked_add(total, curve.at(j));
    }
    return total;
}

cost128 maxst_weight_from_curve(const ComponentCurve& curve, uint32_t n) {
    require_mode(curve, CostMode::Similarity);
    cost128 total = 0;
    for (uint64_t j = 1; j <= curve.w(); ++j) {
        total = checked_add(total, static_cast<cost128>(n) - curve.at(j));
    }
    return total;
}

cost128 profile_from_curve_distance(const ComponentCurve& curve, uint32_t n, uint64_t j) {
    require_mode(curve, CostMode::Distance);
    cost128 total = n;
    for (uint64_t i = 1; i < j; ++i) {
        total = checked_add(total, curve.at(i));
    }
    return total - checked_mul(static_cast<cost128>(curve.at(j)), j);
}

cost128 profile_from_curve_similarity(const ComponentCurve& curve, uint32_t n, uint64_t j) {
    require_mode(curve, CostMode::Similarity);
    cost128 total = 0;
    for (uint64_t i = j + 1; i <= curve.w(); ++i) {
        total = checked_add(total, static_cast<cost128>(n) - curve.at(i));
    }
    const cost128 d = static_cast<cost128>(n) - curve.at(j);
    return checked_add(total, checked_mul(d, j));
}

} // namespace slc
