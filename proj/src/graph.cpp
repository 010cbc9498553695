#include "slc/graph.hpp"

#include <algorithm>
#include <unordered_set>

namespace slc {

namespace {

// Packs an undirected vertex pair into one key for duplicate detection.
uint64_t pair_key(uint32_t u, uint32_t v) {
    const uint32_t a = std::min(u, v);
    const uint32_t b = std::max(u, v);
    return (static_cast<uint64_t>(a) << 32) | b;
}

} // namespace

WeightedGraph WeightedGraph::build(const std::vector<Edge>& edges, uint32_t n_hint) {
    uint32_t n = n_hint;
    for (const Edge& e : edges) {
        if (e.u == e.v) {
            throw SelfLoop("self-loop at vertex " + std::to_string(e.u));
        }
        if (e.w <= 0) {
            throw NonPositiveWeight("edge weight must be a positive integer, got " +
                                    std::to_string(e.w));
        }
        n = std::max({n, e.u + 1, e.v + 1});
    }

    std::unordered_set<uint64_t> seen;
    seen.reserve(edges.size() * 2);
    for (const Edge& e : edges) {
        if (!seen.insert(pair_key(e.u, e.v)).second) {
            throw DuplicateEdge("duplicate edge (" + std::to_string(e.u) + "," +
                                std::to_string(e.v) + ")");
        }
    }

    WeightedGraph g;
    g.n_ = n;
    g.m_ = edges.size();
    g.w_max_ = 0;

    std::vector<uint32_t> deg(n, 0);
    for (const Edge& e : edges) {
        ++deg[e.u];
        ++deg[e.v];
        g.w_max_ = std::max(g.w_max_, e.w);
    }

    g.offsets_.assign(n + 1, 0);
    for (uint32_t v = 0; v < n; ++v) {
        g.offsets_[v + 1] = g.offsets_[v] + deg[v];
    }
    g.neighbors_.resize(2 * g.m_);
    g.weights_.resize(2 * g.m_);

    std::vector<uint64_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
    for (const Edge& e : edges) {
        g.neighbors_[cursor[e.u]] = e.v;
        g.weights_[cursor[e.u]++] = e.w;
        g.neighbors_[cursor[e.v]] = e.u;
        g.weights_[cursor[e.v]++] = e.w;
    }
    return g;
}

WeightedGraph WeightedGraph::from_csr(uint32_t n, uint64_t m, int64_t w_max,
                                      std::vector<uint64_t> offsets,
                                      std::vector<uint32_t> neighbors,
                                      std::vector<int64_t> weights) {
    if (offsets.size() != n + 1 || neighbors.size() != 2 * m || weights.size() != 2 * m) {
        throw std::runtime_error("inconsistent CSR arrays");
    }
    WeightedGraph g;
    g.n_ = n;
    g.m_ = m;
    g.w_max_ = w_max;
    g.offsets_ = std::move(offsets);
    g.neighbors_ = std::move(neighbors);
    g.weights_ = std::move(weights);
    return g;
}

std::vector<Edge> WeightedGraph::edge_list() const {
    std::vector<Edge> out;
    out.reserve(m_);
    for (uint32_t v = 0; v < n_; ++v) {
        for (uint64_t p = offsets_[v]; p < offsets_[v + 1]; ++p) {
            if (v < neighbors_[p]) {
                out.push_back({v, neighbors_[p], weights_[p]});
            }
        }
    }
    return out;
}

bool WeightedGraph::operator==(const WeightedGraph& other) const {
    if (n_ != other.n_ || m_ != other.m_ || w_max_ != other.w_max_) {
        return false;
    }
    std::vector<AdjEntry> a, b;
    for (uint32_t v = 0; v < n_; ++v) {
        if (degree_raw(v) != other.degree_raw(v)) {
            return false;
        }
        a.clear();
        b.clear();
        for (uint32_t i = 0; i < degree_raw(v); ++i) {
            a.push_back(entry_raw(v, i));
            b.push_back(other.entry_raw(v, i));
        }
        auto key = [](const AdjEntry& e) {
            return std::pair<uint32_t, int64_t>(e.neighbor, e.weight);
        };
        auto cmp = [&](const AdjEntry& x, const AdjEntry& y) { return key(x) < key(y); };
        std::sort(a.begin(), a.end(), cmp);
        std::sort(b.begin(), b.end(), cmp);
        if (a != b) {
            return false;
        }
    }
    return true;
}

std::vector<AdjEntry> ThresholdView::neighbors(uint32_t v) const {
    const uint32_t d = session_->graph().n() > v ? session_->graph().degree_raw(v) : 0;
    if (v >= session_->graph().n()) {
        throw VertexOutOfRange("vertex id " + std::to_string(v) + " out of range");
    }
    std::vector<AdjEntry> out;
    for (uint32_t i = 0; i < d; ++i) {
        const AdjEntry e = session_->read_entry(v, i);
        if (passes(e.weight)) {
            out.push_back(e);
        }
    }
    return out;
}

} // namespace slc
