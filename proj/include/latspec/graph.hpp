#pragma once

#include "latspec/rational.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>
#include <queue>
#include <stdexcept>
#include <utility>
#include <vector>

namespace latspec {

/// Position of a vertex in a periodic lattice: translation cell and offset
/// within the fundamental domain.
struct LatticeLabel {
    long g1 = 0, g2 = 0;
    int offset = 0;

    friend bool operator==(const LatticeLabel&, const LatticeLabel&) = default;
};

class VertexSet {
public:
    VertexSet() = default;
    explicit VertexSet(int n) : n_(n), bits_((static_cast<std::size_t>(n) + 63) / 64, 0) {
        if (n < 0) throw std::invalid_argument("VertexSet: negative size");
    }

    static VertexSet all(int n) {
        VertexSet s(n);
        for (int i = 0; i < n; ++i) s.set(i);
        return s;
    }

    static VertexSet of(int n, std::initializer_list<int> items) {
        VertexSet s(n);
        for (int i : items) s.set(i);
        return s;
    }

    int size() const { return n_; }

    bool test(int i) const {
        check(i);
        return (bits_[static_cast<std::size_t>(i) >> 6] >> (i & 63)) & 1u;
    }

    void set(int i, bool value = true) {
        check(i);
        std::uint64_t mask = std::uint64_t{1} << (i & 63);
        if (value)
            bits_[static_cast<std::size_t>(i) >> 6] |= mask;
        else
            bits_[static_cast<std::size_t>(i) >> 6] &= ~mask;
    }

    int count() const {
        int c = 0;
        for (std::uint64_t w : bits_) c += __builtin_popcountll(w);
        return c;
    }

    bool subset_of(const VertexSet& o) const {
        require_same(o);
        for (std::size_t k = 0; k < bits_.size(); ++k)
            if (bits_[k] & ~o.bits_[k]) return false;
        return true;
    }

    VertexSet& operator|=(const VertexSet& o) {
        require_same(o);
        for (std::size_t k = 0; k < bits_.size(); ++k) bits_[k] |= o.bits_[k];
        return *this;
    }

    VertexSet& operator&=(const VertexSet& o) {
        require_same(o);
        for (std::size_t k = 0; k < bits_.size(); ++k) bits_[k] &= o.bits_[k];
        return *this;
    }

    std::vector<int> to_vector() const {
        std::vector<int> out;
        for (int i = 0; i < n_; ++i)
            if (test(i)) out.push_back(i);
        return out;
    }

    friend bool operator==(const VertexSet& a, const VertexSet& b) {
        return a.n_ == b.n_ && a.bits_ == b.bits_;
    }

private:
    void check(int i) const {
        if (i < 0 || i >= n_) throw std::out_of_range("VertexSet index");
    }
    void require_same(const VertexSet& o) const {
        if (n_ != o.n_) throw std::invalid_argument("VertexSet size mismatch");
    }

    int n_ = 0;
    std::vector<std::uint64_t> bits_;
};

/// Finite undirected graph, immutable after construction.  Adjacency lists are
/// sorted; optional exact planar coordinates, lattice labels and the vertex
/// degree in the ambient (infinite) lattice ride along for operator assembly.
class Graph {
public:
    Graph(int n, const std::vector<std::pair<int, int>>& edges,
          std::optional<std::vector<PlanePoint>> coords = std::nullopt,
          std::optional<std::vector<LatticeLabel>> labels = std::nullopt,
          std::optional<std::vector<int>> ambient_degree = std::nullopt)
        : n_(n), adj_(static_cast<std::size_t>(std::max(n, 0))),
          coords_(std::move(coords)), labels_(std::move(labels)),
          ambient_degree_(std::move(ambient_degree)) {
        if (n < 0) throw std::invalid_argument("Graph: negative vertex count");
        if (coords_ && static_cast<int>(coords_->size()) != n)
            throw std::invalid_argument("Graph: coords size mismatch");
        if (labels_ && static_cast<int>(labels_->size()) != n)
            throw std::invalid_argument("Graph: labels size mismatch");
        if (ambient_degree_ && static_cast<int>(ambient_degree_->size()) != n)
            throw std::invalid_argument("Graph: ambient degree size mismatch");
        for (auto [i, j] : edges) {
            if (i < 0 || i >= n || j < 0 || j >= n) throw std::out_of_range("Graph: edge endpoint out of range");
            if (i == j) throw std::invalid_argument("Graph: self-loop");
            adj_[static_cast<std::size_t>(i)].push_back(j);
            adj_[static_cast<std::size_t>(j)].push_back(i);
        }
        for (auto& nb : adj_) {
            std::sort(nb.begin(), nb.end());
            if (std::adjacent_find(nb.begin(), nb.end()) != nb.end())
                throw std::invalid_argument("Graph: duplicate edge");
        }
    }

    int vertex_count() const { return n_; }

    const std::vector<int>& neighbors(int v) const {
        check(v);
        return adj_[static_cast<std::size_t>(v)];
    }

    int degree(int v) const { return static_cast<int>(neighbors(v).size()); }

    bool adjacent(int u, int v) const {
        const auto& nb = neighbors(u);
        return std::binary_search(nb.begin(), nb.end(), v);
    }

    long edge_count() const {
        long twice = 0;
        for (const auto& nb : adj_) twice += static_cast<long>(nb.size());
        return twice / 2;
    }

    /// Edges as (i,j) with i<j, lexicographically sorted.
    std::vector<std::pair<int, int>> edges() const {
        std::vector<std::pair<int, int>> out;
        for (int i = 0; i < n_; ++i)
            for (int j : adj_[static_cast<std::size_t>(i)])
                if (i < j) out.emplace_back(i, j);
        return out;
    }

    bool has_coords() const { return coords_.has_value(); }
    const std::vector<PlanePoint>& coords() const {
        if (!coords_) throw std::logic_error("Graph: no coordinates");
        return *coords_;
    }

    bool has_labels() const { return labels_.has_value(); }
    const std::vector<LatticeLabel>& labels() const {
        if (!labels_) throw std::logic_error("Graph: no labels");
        return *labels_;
    }

    bool has_ambient_degree() const { return ambient_degree_.has_value(); }

    /// Degree of v in the infinite lattice the patch was cut from; falls back
    /// to the patch degree for ad-hoc graphs.
    int ambient_degree(int v) const {
        check(v);
        if (ambient_degree_) return (*ambient_degree_)[static_cast<std::size_t>(v)];
        return degree(v);
    }

private:
    void check(int v) const {
        if (v < 0 || v >= n_) throw std::out_of_range("Graph vertex index");
    }

    int n_;
    std::vector<std::vector<int>> adj_;
    std::optional<std::vector<PlanePoint>> coords_;
    std::optional<std::vector<LatticeLabel>> labels_;
    std::optional<std::vector<int>> ambient_degree_;
};

inline int degree(const Graph& g, int v) { return g.degree(v); }

struct Components {
    std::vector<int> label;                // component id per vertex
    std::vector<std::vector<int>> parts;   // vertices per component, each sorted
};

inline Components connected_components(const Graph& g) {
    int n = g.vertex_count();
    Components comps;
    comps.label.assign(static_cast<std::size_t>(n), -1);
    for (int start = 0; start < n; ++start) {
        if (comps.label[static_cast<std::size_t>(start)] >= 0) continue;
        int id = static_cast<int>(comps.parts.size());
        comps.parts.emplace_back();
        std::queue<int> q;
        q.push(start);
        comps.label[static_cast<std::size_t>(start)] = id;
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            comps.parts[static_cast<std::size_t>(id)].push_back(v);
            for (int w : g.neighbors(v)) {
                if (comps.label[static_cast<std::size_t>(w)] < 0) {
                    comps.label[static_cast<std::size_t>(w)] = id;
                    q.push(w);
                }
            }
        }
        std::sort(comps.parts[static_cast<std::size_t>(id)].begin(), comps.parts[static_cast<std::size_t>(id)].end());
    }
    return comps;
}

struct InducedSubgraph {
    Graph graph;
    std::vector<int> to_sub;     // parent index -> sub index, -1 if dropped
    std::vector<int> to_parent;  // sub index -> parent index
};

inline InducedSubgraph induced_subgraph(const Graph& g, const VertexSet& s) {
    if (s.size() != g.vertex_count()) throw std::invalid_argument("induced_subgraph: set size mismatch");
    int n = g.vertex_count();
    std::vector<int> to_sub(static_cast<std::size_t>(n), -1);
    std::vector<int> to_parent;
    for (int v = 0; v < n; ++v) {
        if (s.test(v)) {
            to_sub[static_cast<std::size_t>(v)] = static_cast<int>(to_parent.size());
            to_parent.push_back(v);
        }
    }
    std::vector<std::pair<int, int>> edges;
    for (int v = 0; v < n; ++v) {
        if (!s.test(v)) continue;
        for (int w : g.neighbors(v))
            if (v < w && s.test(w))
                edges.emplace_back(to_sub[static_cast<std::size_t>(v)], to_sub[static_cast<std::size_t>(w)]);
    }
    std::optional<std::vector<PlanePoint>> coords;
    if (g.has_coords()) {
        coords.emplace();
        for (int v : to_parent) coords->push_back(g.coords()[static_cast<std::size_t>(v)]);
    }
    std::optional<std::vector<LatticeLabel>> labels;
    if (g.has_labels()) {
        labels.emplace();
        for (int v : to_parent) labels->push_back(g.labels()[static_cast<std::size_t>(v)]);
    }
    std::optional<std::vector<int>> amb;
    if (g.has_ambient_degree()) {
        amb.emplace();
        for (int v : to_parent) amb->push_back(g.ambient_degree(v));
    }
    Graph sub(static_cast<int>(to_parent.size()), edges, std::move(coords), std::move(labels), std::move(amb));
    return {std::move(sub), std::move(to_sub), std::move(to_parent)};
}

// ---- dense indexing of the box {0..L-1}^d ----

inline long box_site_count(int d, int L) {
    long n = 1;
    for (int k = 0; k < d; ++k) n *= L;
    return n;
}

inline int box_index(const std::vector<int>& pt, int d, int L) {
    int idx = 0;
    for (int k = d - 1; k >= 0; --k) idx = idx * L + pt[static_cast<std::size_t>(k)];
    return idx;
}

inline std::vector<int> box_point(int idx, int d, int L) {
    std::vector<int> pt(static_cast<std::size_t>(d));
    for (int k = 0; k < d; ++k) {
        pt[static_cast<std::size_t>(k)] = idx % L;
        idx /= L;
    }
    return pt;
}

/// Sites of the box {0..L-1}^d within graph distance `depth` of the complement
/// in Z^d (depth=2 gives the second boundary collar).
inline VertexSet boundary_collar(int L, int d, int depth) {
    if (L < 1 || d < 1 || depth < 1) throw std::invalid_argument("boundary_collar: parameters must be >= 1");
    long n = box_site_count(d, L);
    if (n > 1000000) throw std::invalid_argument("boundary_collar: box too large");
    VertexSet collar(static_cast<int>(n));
    for (int idx = 0; idx < static_cast<int>(n); ++idx) {
        auto pt = box_point(idx, d, L);
        int dist = L;  // distance to the complement, walking straight out
        for (int k = 0; k < d; ++k)
            dist = std::min({dist, pt[static_cast<std::size_t>(k)] + 1, L - pt[static_cast<std::size_t>(k)]});
        if (dist <= depth) collar.set(idx);
    }
    return collar;
}

}  // namespace latspec
