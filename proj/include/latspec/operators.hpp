#pragma once

#include "latspec/graph.hpp"
#include "latspec/rational_linalg.hpp"
#include "latspec/sym_eigen.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

namespace latspec {

enum class OperatorKind { adjacency, combinatorial_laplacian, normalized_laplacian, schrodinger };
enum class OperatorSign { as_defined, negated };

/// Which operator to assemble on a graph.  Laplacians use the ambient-lattice
/// degree when the graph carries one, so that restrictions of lattice
/// operators keep the full-operator matrix elements (simple boundary
/// conditions).
struct OperatorSpec {
    OperatorKind kind = OperatorKind::adjacency;
    std::optional<std::vector<Rat>> potential;
    std::optional<Rat> energy_shift;
    OperatorSign sign = OperatorSign::as_defined;
};

inline RationalMatrix build_operator(const Graph& g, const OperatorSpec& spec) {
    int n = g.vertex_count();
    if (spec.potential && static_cast<int>(spec.potential->size()) != n)
        throw std::invalid_argument("build_operator: potential size mismatch");
    RationalMatrix m(n, n);
    switch (spec.kind) {
        case OperatorKind::adjacency:
            for (int i = 0; i < n; ++i)
                for (int j : g.neighbors(i)) m.at(i, j) = 1;
            break;
        case OperatorKind::combinatorial_laplacian:
        case OperatorKind::schrodinger:
            for (int i = 0; i < n; ++i) {
                m.at(i, i) = g.ambient_degree(i);
                for (int j : g.neighbors(i)) m.at(i, j) = -1;
            }
            break;
        case OperatorKind::normalized_laplacian: {
            int deg = -1;
            for (int i = 0; i < n; ++i) {
                int di = g.ambient_degree(i);
                if (di == 0) throw std::invalid_argument("build_operator: normalized Laplacian with isolated vertex");
                if (deg < 0) deg = di;
                if (di != deg)
                    throw std::invalid_argument("build_operator: normalized Laplacian needs constant (ambient) degree");
            }
            for (int i = 0; i < n; ++i) {
                m.at(i, i) = 1;
                for (int j : g.neighbors(i)) m.at(i, j) = rat(-1, deg);
            }
            break;
        }
    }
    if (spec.kind == OperatorKind::schrodinger && spec.potential)
        for (int i = 0; i < n; ++i) m.at(i, i) += (*spec.potential)[static_cast<std::size_t>(i)];
    if (spec.sign == OperatorSign::negated)
        for (Rat& v : m.a) v = -v;
    if (spec.energy_shift)
        for (int i = 0; i < n; ++i) m.at(i, i) -= *spec.energy_shift;
    return m;
}

/// Principal submatrix on s, keeping the diagonal of the full operator
/// (simple boundary conditions).  Row/column order follows ascending vertex
/// index within s.
inline RationalMatrix restrict_simple(const RationalMatrix& m, const Graph& g, const VertexSet& s) {
    if (m.rows != g.vertex_count() || m.cols != g.vertex_count())
        throw std::invalid_argument("restrict_simple: matrix/graph size mismatch");
    if (s.size() != g.vertex_count()) throw std::invalid_argument("restrict_simple: set size mismatch");
    auto keep = s.to_vector();
    if (keep.empty()) throw std::invalid_argument("restrict_simple: empty vertex set");
    RationalMatrix r(static_cast<int>(keep.size()), static_cast<int>(keep.size()));
    for (std::size_t i = 0; i < keep.size(); ++i)
        for (std::size_t j = 0; j < keep.size(); ++j)
            r.at(static_cast<int>(i), static_cast<int>(j)) = m.at(keep[i], keep[j]);
    return r;
}

/// Float adjacency in packed storage; the fast path for percolation clusters.
inline SymmetricMatrix adjacency_sym(const Graph& g) {
    SymmetricMatrix s(g.vertex_count());
    for (int i = 0; i < g.vertex_count(); ++i)
        for (int j : g.neighbors(i))
            if (j <= i) s.at(i, j) = 1.0;
    return s;
}

/// Normalized eigenvalue counting function N(E) = #{lambda <= E} / normalization,
/// with optional exact multiplicities at rational energies of interest.
class CountingFunction {
public:
    CountingFunction() = default;
    CountingFunction(std::vector<double> eigenvalues, Rat normalization)
        : eigs_(std::move(eigenvalues)), norm_(std::move(normalization)) {
        if (norm_ <= 0) throw std::invalid_argument("CountingFunction: normalization must be positive");
        std::sort(eigs_.begin(), eigs_.end());
    }

    const std::vector<double>& eigenvalues() const { return eigs_; }
    const Rat& normalization() const { return norm_; }

    double value(double energy) const {
        auto it = std::upper_bound(eigs_.begin(), eigs_.end(), energy);
        return static_cast<double>(it - eigs_.begin()) / to_double(norm_);
    }

    /// count(E)/normalization as an exact rational (count from the float list)
    Rat value_exact_count(double energy) const {
        auto it = std::upper_bound(eigs_.begin(), eigs_.end(), energy);
        Rat v = Rat(static_cast<long>(it - eigs_.begin())) / norm_;
        v.canonicalize();
        return v;
    }

    void attach_exact(const Rat& energy, long multiplicity) { exact_[energy] = multiplicity; }
    bool has_exact(const Rat& energy) const { return exact_.count(energy) > 0; }

    long exact_multiplicity(const Rat& energy) const {
        auto it = exact_.find(energy);
        if (it == exact_.end())
            throw std::invalid_argument("CountingFunction: no exact multiplicity at this energy; compute one via rational_kernel");
        return it->second;
    }

    const std::map<Rat, long>& exact_multiplicities() const { return exact_; }

    /// exact jump: multiplicity(e)/normalization
    Rat jump_exact(const Rat& energy) const {
        Rat j = Rat(exact_multiplicity(energy)) / norm_;
        j.canonicalize();
        return j;
    }

    /// cluster-mode jump: #{ |lambda - e| <= tol } / normalization
    double jump_cluster(double energy, double tol) const {
        auto lo = std::lower_bound(eigs_.begin(), eigs_.end(), energy - tol);
        auto hi = std::upper_bound(eigs_.begin(), eigs_.end(), energy + tol);
        return static_cast<double>(hi - lo) / to_double(norm_);
    }

    long cluster_count(double energy, double tol) const {
        auto lo = std::lower_bound(eigs_.begin(), eigs_.end(), energy - tol);
        auto hi = std::upper_bound(eigs_.begin(), eigs_.end(), energy + tol);
        return static_cast<long>(hi - lo);
    }

private:
    std::vector<double> eigs_;
    Rat norm_{1};
    std::map<Rat, long> exact_;
};

inline CountingFunction counting_function(std::vector<double> eigenvalues, Rat normalization) {
    return CountingFunction(std::move(eigenvalues), std::move(normalization));
}

}  // namespace latspec
