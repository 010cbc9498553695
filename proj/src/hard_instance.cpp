#include "slc/hard_instance.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <unordered_set>

namespace slc {

cost128 closed_form_cost(CostMode mode, uint32_t n, int64_t w, uint64_t t_w) {
    const cost128 nn = static_cast<cost128>(n);
    const cost128 t = static_cast<cost128>(t_w);
    const cost128 extra = static_cast<cost128>(w) - 1;
    if (mode == CostMode::Distance) {
        return (checked_mul(nn, nn - 1) + checked_mul(extra, checked_mul(t, t + 1))) / 2;
    }
    return (checked_mul(nn, nn - 1) +
            checked_mul(extra, checked_mul(t, 2 * nn - 1 - t))) /
           2;
}

namespace {

void require_instance_params(CostMode mode, uint32_t n, int64_t w, double eps_lb,
                             int family, double avg_degree) {
    if (n < 3) {
        throw std::runtime_error("hard instance needs n >= 3");
    }
    if (family != 0 && family != 1) {
        throw std::runtime_error("hard instance family must be 0 or 1");
    }
    if (avg_degree < 2.0 || avg_degree >= static_cast<double>(n)) {
        throw std::runtime_error("hard instance average degree must lie in [2, n)");
    }
    const double nd = n;
    const double wd = static_cast<double>(w);
    double floor_eps = 0.0;
    if (mode == CostMode::Distance) {
        if (w < 2) {
            throw std::runtime_error("distance hard instance needs W > 1");
        }
        floor_eps = std::pow(wd, 0.25) / std::sqrt(40.0 * nd);
    } else {
        if (w <= 10) {
            throw std::runtime_error("similarity hard instance needs W > 10");
        }
        floor_eps = std::sqrt(wd / (40.0 * nd));
    }
    if (!(eps_lb > floor_eps && eps_lb < 0.5)) {
        throw std::runtime_error("hard instance eps_lb outside its separability range");
    }
}

uint64_t edge_key(uint32_t a, uint32_t b) {
    if (a > b) {
        std::swap(a, b);
    }
    return (static_cast<uint64_t>(a) << 32) | b;
}

// Adds padding edges connecting lowest-degree vertices first until every
// degree reaches floor(d); partners with the floor already met are used only
// when a vertex has no other option left.
void pad_to_degree(std::vector<Edge>& edges, std::unordered_set<uint64_t>& present,
                   std::vector<uint32_t>& deg, uint32_t n, double avg_degree,
                   int64_t pad_weight) {
    const auto floor_d = static_cast<uint32_t>(std::floor(avg_degree));
    using Item = std::pair<uint32_t, uint32_t>; // (degree, vertex)
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    for (uint32_t v = 0; v < n; ++v) {
        if (deg[v] < floor_d) {
            pq.emplace(deg[v], v);
        }
    }

    auto add_edge = [&](uint32_t a, uint32_t b) {
        edges.push_back({a, b, pad_weight});
        present.insert(edge_key(a, b));
        ++deg[a];
        ++deg[b];
        if (deg[a] < floor_d) {
            pq.emplace(deg[a], a);
        }
        if (deg[b] < floor_d) {
            pq.emplace(deg[b], b);
        }
    };

    std::vector<Item> parked;
    while (!pq.empty()) {
        const auto [du, u] = pq.top();
        pq.pop();
        if (du != deg[u] || deg[u] >= floor_d) {
            continue; // stale entry
        }
        // Preferred partner: another deficient vertex, lowest degree first.
        uint32_t partner = n;
        parked.clear();
        while (!pq.empty()) {
            const auto [dv, v] = pq.top();
            pq.pop();
            if (dv != deg[v] || deg[v] >= floor_d) {
                continue;
            }
            if (v != u && !present.contains(edge_key(u, v))) {
                partner = v;
                break;
            }
            parked.push_back({dv, v});
        }
        for (const Item& it : parked) {
            pq.push(it);
        }
        if (partner == n) {
            // Everyone still deficient is already a neighbor: take the
            // lowest-degree non-neighbor among the rest.
            uint32_t best_deg = ~0u;
            for (uint32_t v = 0; v < n; ++v) {
                if (v != u && deg[v] < best_deg && !present.contains(edge_key(u, v))) {
                    partner = v;
                    best_deg = deg[v];
                }
            }
            if (partner == n) {
                throw std::runtime_error("padding could not find a free partner");
            }
        }
        add_edge(u, partner);
        if (deg[u] < floor_d) {
            pq.emplace(deg[u], u);
        }
    }
}

} // namespace

HardInstance gen_hard_instance(CostMode mode, uint32_t n, int64_t w, double eps_lb,
                               int family, double avg_degree, uint64_t seed) {
    require_instance_params(mode, n, w, eps_lb, family, avg_degree);

    const double q = mode == CostMode::Distance
                         ? 1.0 / std::sqrt(static_cast<double>(w) - 1.0)
                         : 1.0 / (static_cast<double>(w) - 1.0);
    const double sign = family == 0 ? 1.0 : -1.0;
    const double p = std::min(1.0, q * (1.0 + sign * eps_lb));

    Rng rng(seed);
    Rng weight_rng = rng.stream(0, 0);

    std::vector<Edge> edges;
    edges.reserve(static_cast<size_t>(std::ceil(avg_degree * n / 2.0)));
    std::unordered_set<uint64_t> present;
    present.reserve(edges.capacity() * 2);
    std::vector<uint32_t> deg(n, 0);

    uint64_t t_w = 0;
    for (uint32_t i = 0; i + 1 < n; ++i) {
        const bool heavy = weight_rng.uniform_real() < p;
        t_w += heavy ? 1 : 0;
        edges.push_back({i, i + 1, heavy ? w : 1});
        present.insert(edge_key(i, i + 1));
        ++deg[i];
        ++deg[i + 1];
    }

    const int64_t pad_weight = mode == CostMode::Distance ? w : 1;
    pad_to_degree(edges, present, deg, n, avg_degree, pad_weight);

    return HardInstance{WeightedGraph::build(edges, n), mode,  n,
                        w,                              eps_lb, family,
                        t_w,                            closed_form_cost(mode, n, w, t_w),
                        seed};
}

std::vector<HardInstance> gen_corpus(const CorpusSpec& spec) {
    std::vector<HardInstance> out;
    out.reserve(spec.count);
    Rng rng(spec.seed);
    for (uint32_t i = 0; i < spec.count; ++i) {
        out.push_back(gen_hard_instance(spec.mode, spec.n, spec.w, spec.eps_lb, spec.family,
                                        spec.avg_degree, rng.stream(5, i).next_u64()));
    }
    return out;
}

} // namespace slc
