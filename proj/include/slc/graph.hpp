#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace slc {

struct NonPositiveWeight : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct SelfLoop : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DuplicateEdge : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct VertexOutOfRange : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Edge {
    uint32_t u;
    uint32_t v;
    int64_t w;
};

struct AdjEntry {
    uint32_t neighbor;
    int64_t weight;

    bool operator==(const AdjEntry&) const = default;
};

// Immutable undirected graph with positive integer weights, stored CSR-style.
// Adjacency entries keep edge-list insertion order, so shuffling the edge list
// before build randomizes every adjacency list.
class WeightedGraph {
public:
    // Builds from an edge list. Vertex count is max id + 1 unless a larger
    // n_hint is given (allowing trailing isolated vertices).
    static WeightedGraph build(const std::vector<Edge>& edges, uint32_t n_hint = 0);

    [[nodiscard]] uint32_t n() const { return n_; }
    [[nodiscard]] uint64_t m() const { return m_; }
    [[nodiscard]] int64_t max_weight() const { return w_max_; }
    [[nodiscard]] double avg_degree() const {
        return n_ == 0 ? 0.0 : 2.0 * static_cast<double>(m_) / static_cast<double>(n_);
    }

    // Unmetered structural access. Algorithms that must account for their
    // queries go through AccessSession instead.
    [[nodiscard]] uint32_t degree_raw(uint32_t v) const {
        return static_cast<uint32_t>(offsets_[v + 1] - offsets_[v]);
    }
    [[nodiscard]] AdjEntry entry_raw(uint32_t v, uint64_t i) const {
        const uint64_t p = offsets_[v] + i;
        return {neighbors_[p], weights_[p]};
    }

    // Every undirected edge once, as (min endpoint, max endpoint, weight), in
    // an unspecified but deterministic order.
    [[nodiscard]] std::vector<Edge> edge_list() const;

    // Semantic equality: same n, m, W and the same per-vertex neighbor
    // multisets (adjacency order is a storage detail).
    bool operator==(const WeightedGraph& other) const;

    // Serialization hooks (cli layer).
    [[nodiscard]] const std::vector<uint64_t>& offsets() const { return offsets_; }
    [[nodiscard]] const std::vector<uint32_t>& neighbors() const { return neighbors_; }
    [[nodiscard]] const std::vector<int64_t>& weights() const { return weights_; }
    static WeightedGraph from_csr(uint32_t n, uint64_t m, int64_t w_max,
                                  std::vector<uint64_t> offsets,
                                  std::vector<uint32_t> neighbors,
                                  std::vector<int64_t> weights);

private:
    WeightedGraph() = default;

    uint32_t n_ = 0;
    uint64_t m_ = 0;
    int64_t w_max_ = 0;
    std::vector<uint64_t> offsets_;   // n+1
    std::vector<uint32_t> neighbors_; // 2m
    std::vector<int64_t> weights_;    // 2m
};

enum class AccessModel { UnitCost, PrefixCost };

// Metered adjacency access. Reading the i-th neighbor (0-based index i)
// charges 1 under UnitCost and i+1 under PrefixCost; a degree query charges
// deg(v) under both models (a degree is learned by scanning the list).
class AccessSession {
public:
    explicit AccessSession(const WeightedGraph& g, AccessModel model = AccessModel::UnitCost)
        : graph_(&g), model_(model) {}

    [[nodiscard]] const WeightedGraph& graph() const { return *graph_; }
    [[nodiscard]] AccessModel model() const { return model_; }
    [[nodiscard]] uint64_t entries_scanned() const { return entries_scanned_; }

    AdjEntry read_entry(uint32_t v, uint64_t i) {
        check_vertex(v);
        if (i >= graph_->degree_raw(v)) {
            throw VertexOutOfRange("adjacency index out of range");
        }
        entries_scanned_ += model_ == AccessModel::UnitCost ? 1 : i + 1;
        return graph_->entry_raw(v, i);
    }

    uint32_t degree(uint32_t v) {
        check_vertex(v);
        const uint32_t d = graph_->degree_raw(v);
        entries_scanned_ += d;
        return d;
    }

private:
    void check_vertex(uint32_t v) const {
        if (v >= graph_->n()) {
            throw VertexOutOfRange("vertex id " + std::to_string(v) + " out of range");
        }
    }

    const WeightedGraph* graph_;
    AccessModel model_;
    uint64_t entries_scanned_ = 0;
};

// AtMost keeps edges with weight <= threshold (distance thresholding);
// AtLeast keeps edges with weight >= threshold (similarity thresholding).
enum class ThresholdMode { AtMost, AtLeast };

// Implicit threshold subgraph over a metered session. The subgraph's edges are
// never materialized: enumerating a vertex's view-neighbors scans all of its
// underlying adjacency entries and filters.
class ThresholdView {
public:
    ThresholdView(AccessSession& session, ThresholdMode mode, int64_t threshold)
        : session_(&session), mode_(mode), threshold_(threshold) {}

    [[nodiscard]] AccessSession& session() const { return *session_; }
    [[nodiscard]] ThresholdMode mode() const { return mode_; }
    [[nodiscard]] int64_t threshold() const { return threshold_; }

    [[nodiscard]] bool passes(int64_t w) const {
        return mode_ == ThresholdMode::AtMost ? w <= threshold_ : w >= threshold_;
    }

    // Scans the full underlying adjacency list of v (charged) and returns the
    // entries passing the threshold predicate.
    [[nodiscard]] std::vector<AdjEntry> neighbors(uint32_t v) const;

private:
    AccessSession* session_;
    ThresholdMode mode_;
    int64_t threshold_;
};

// Spec-facing free functions.
inline std::vector<AdjEntry> view_neighbors(const ThresholdView& view, uint32_t v) {
    return view.neighbors(v);
}
inline uint32_t degree(AccessSession& session, uint32_t v) {
    return session.degree(v);
}

} // namespace slc
