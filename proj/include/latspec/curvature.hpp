#pragma once

#include "latspec/continuation.hpp"
#include "latspec/kagome.hpp"
#include "latspec/lattice.hpp"
#include "latspec/parallel.hpp"

#include <stdexcept>
#include <vector>

namespace latspec {

/// Vertex-face incidence of a tessellation.
struct Corner {
    int vertex = -1;
    int face = -1;
};

namespace detail {

inline void require_interior_corner(const Tessellation& t, const Corner& c) {
    if (c.vertex < 0 || c.vertex >= t.graph.vertex_count()) throw std::out_of_range("corner: vertex id");
    if (c.face < 0 || c.face >= static_cast<int>(t.faces.size())) throw std::out_of_range("corner: face id");
    const auto& cycle = t.faces[static_cast<std::size_t>(c.face)];
    bool on_face = false;
    for (int v : cycle) on_face |= v == c.vertex;
    if (!on_face) throw std::invalid_argument("corner: vertex not on face");
    if (!t.vertex_interior[static_cast<std::size_t>(c.vertex)] || !t.face_interior[static_cast<std::size_t>(c.face)])
        throw std::invalid_argument("corner: not interior; incident structure incomplete");
}

}  // namespace detail

/// kappa(v,f) = 1/|v| + 1/|f| - 1/2, exact.
inline Rat corner_curvature(const Tessellation& t, const Corner& c) {
    detail::require_interior_corner(t, c);
    long dv = t.graph.degree(c.vertex);
    long df = t.face_sides[static_cast<std::size_t>(c.face)];
    Rat k = rat(1, dv) + rat(1, df) - rat(1, 2);
    k.canonicalize();
    return k;
}

/// kappa(v) = 1 - |v|/2 + sum_{f contains v} 1/|f|; equals the sum of the
/// corner curvatures at v, which is asserted here exactly.
inline Rat vertex_curvature(const Tessellation& t, int v) {
    if (v < 0 || v >= t.graph.vertex_count()) throw std::out_of_range("vertex_curvature: vertex id");
    if (!t.vertex_interior[static_cast<std::size_t>(v)])
        throw std::invalid_argument("vertex_curvature: vertex not interior");
    long dv = t.graph.degree(v);
    Rat k = Rat(1) - rat(dv, 2);
    Rat corner_sum(0);
    for (std::size_t f = 0; f < t.faces.size(); ++f) {
        bool contains = false;
        for (int w : t.faces[f]) contains |= w == v;
        if (!contains) continue;
        k += rat(1, t.face_sides[f]);
        corner_sum += corner_curvature(t, {v, static_cast<int>(f)});
    }
    k.canonicalize();
    corner_sum.canonicalize();
    if (k != corner_sum) throw std::logic_error("vertex_curvature: corner decomposition failed");
    return k;
}

struct CurvatureSignReport {
    bool nonpositive = true;
    std::vector<Corner> positive_corners;
    Rat max_curvature;  // over interior corners; 0 if none scanned
    long scanned = 0;
};

/// Checks kappa(v,f) <= 0 over all interior corners.
inline CurvatureSignReport nonpositive_corner_curvature(const Tessellation& t) {
    CurvatureSignReport rep;
    rep.max_curvature = Rat(0);
    bool first = true;
    for (std::size_t f = 0; f < t.faces.size(); ++f) {
        if (!t.face_interior[f]) continue;
        for (int v : t.faces[f]) {
            if (!t.vertex_interior[static_cast<std::size_t>(v)]) continue;
            Corner c{v, static_cast<int>(f)};
            Rat k = corner_curvature(t, c);
            ++rep.scanned;
            if (first || k > rep.max_curvature) {
                rep.max_curvature = k;
                first = false;
            }
            if (k > 0) {
                rep.nonpositive = false;
                rep.positive_corners.push_back(c);
            }
        }
    }
    return rep;
}

struct CurvatureScanEntry {
    Rat energy;
    int witness_dimension = 0;
};

struct CurvatureSupportScan {
    CurvatureSignReport curvature;
    std::vector<CurvatureScanEntry> energies;  // all scanned energies
    std::vector<Rat> witness_energies;         // those with nonzero witness space
    int support_size = 0;
};

/// Cross-tabulates the curvature sign with exact finite-support witnesses of
/// the normalized Laplacian over the candidate energies.  Absence of a witness
/// is reported for the scanned set only, never as a theorem.
inline CurvatureSupportScan curvature_vs_support_scan(const Tessellation& t, const std::vector<Rat>& energies,
                                                      int jobs = 1) {
    CurvatureSupportScan scan;
    scan.curvature = nonpositive_corner_curvature(t);
    VertexSet support = full_ambient_support(t.graph);
    scan.support_size = support.count();
    OperatorSpec spec;
    spec.kind = OperatorKind::normalized_laplacian;
    scan.energies.assign(energies.size(), {});
    parallel_for(static_cast<int>(energies.size()), jobs, [&](int i) {
        const Rat& e = energies[static_cast<std::size_t>(i)];
        FiniteSupportWitness w = finitely_supported_eigenfunction_exists(t.graph, spec, e, support);
        scan.energies[static_cast<std::size_t>(i)] = {e, static_cast<int>(w.witnesses.size())};
    });
    for (const auto& entry : scan.energies)
        if (entry.witness_dimension > 0) scan.witness_energies.push_back(entry.energy);
    return scan;
}

}  // namespace latspec
