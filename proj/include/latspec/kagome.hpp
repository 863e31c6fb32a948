#pragma once

#include "latspec/continuation.hpp"
#include "latspec/lattice.hpp"
#include "latspec/operators.hpp"

#include <array>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>
#include <vector>

namespace latspec {

/// Alternating +-1 function on one hexagon ring, zero elsewhere.
struct HexagonFunction {
    int hexagon = -1;
    std::vector<Rat> values;  // over all patch vertices
};

inline OperatorSpec kagome_laplacian_spec() {
    OperatorSpec spec;
    spec.kind = OperatorKind::normalized_laplacian;
    return spec;
}

/// F_H for an interior hexagon; the exact eigen-equation
/// Delta_K F_H = (3/2) F_H is re-verified on the whole patch before returning.
inline HexagonFunction hexagon_eigenfunction(const KagomePatch& patch, int h) {
    if (h < 0 || h >= static_cast<int>(patch.hexagons.size()))
        throw std::out_of_range("hexagon_eigenfunction: hexagon id");
    const auto& ring = patch.hexagons[static_cast<std::size_t>(h)];
    for (int v : ring)
        if (patch.graph.degree(v) != 4)
            throw std::invalid_argument("hexagon_eigenfunction: hexagon touches the patch boundary");
    HexagonFunction f;
    f.hexagon = h;
    f.values.assign(static_cast<std::size_t>(patch.graph.vertex_count()), Rat(0));
    for (int k = 0; k < 6; ++k) f.values[static_cast<std::size_t>(ring[static_cast<std::size_t>(k)])] = (k % 2 == 0) ? 1 : -1;

    RationalMatrix lap = build_operator(patch.graph, kagome_laplacian_spec());
    std::vector<Rat> lhs = lap.apply(f.values);
    const Rat three_halves = rat(3, 2);
    for (std::size_t i = 0; i < lhs.size(); ++i)
        if (lhs[i] != three_halves * f.values[i])
            throw std::logic_error("hexagon_eigenfunction: exact eigen-equation failed");
    return f;
}

/// Exact rank of a family of hexagon functions (must equal the family size).
inline int hexagon_family_rank(const KagomePatch& patch, const std::vector<int>& hex_ids) {
    std::set<int> seen(hex_ids.begin(), hex_ids.end());
    if (seen.size() != hex_ids.size()) throw std::invalid_argument("hexagon_family_rank: duplicate hexagon ids");
    RationalMatrix m(static_cast<int>(hex_ids.size()), patch.graph.vertex_count());
    for (std::size_t r = 0; r < hex_ids.size(); ++r) {
        HexagonFunction f = hexagon_eigenfunction(patch, hex_ids[r]);
        for (int j = 0; j < patch.graph.vertex_count(); ++j) m.at(static_cast<int>(r), j) = f.values[static_cast<std::size_t>(j)];
    }
    return rational_rank(m);
}

/// Integer certificate that the patch Laplacian spectrum stays at or below
/// 3/2: writes 4*(3/2 - Delta_K) = A + 2*Id as T^t T + D with D diagonal
/// nonnegative, where T rows are the ambient Kagome triangles having at least
/// two vertices in the patch.  Exact identity, no tolerance.
inline bool flat_band_top_certificate(const KagomePatch& patch) {
    const Graph& g = patch.graph;
    int n = g.vertex_count();
    long L = 0;
    while (3 * L * L < n) ++L;
    auto vertex_id = [&](long g1, long g2, int off) -> int {
        if (g1 < 0 || g1 >= L || g2 < 0 || g2 >= L) return -1;
        return static_cast<int>((g1 * L + g2) * 3 + off);
    };
    std::vector<std::vector<int>> triangles;
    for (long g1 = -1; g1 <= L; ++g1) {
        for (long g2 = -1; g2 <= L; ++g2) {
            std::array<std::array<int, 3>, 2> cands{{
                {vertex_id(g1, g2, 0), vertex_id(g1, g2, 1), vertex_id(g1, g2 + 1, 2)},   // up
                {vertex_id(g1, g2, 0), vertex_id(g1, g2, 2), vertex_id(g1 - 1, g2, 1)},   // down
            }};
            for (const auto& cand : cands) {
                std::vector<int> members;
                for (int v : cand)
                    if (v >= 0) members.push_back(v);
                if (members.size() >= 2) triangles.push_back(std::move(members));
            }
        }
    }
    std::vector<std::vector<long>> gram(static_cast<std::size_t>(n), std::vector<long>(static_cast<std::size_t>(n), 0));
    for (const auto& tri : triangles)
        for (int u : tri)
            for (int v : tri) ++gram[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)];
    for (int u = 0; u < n; ++u) {
        if (gram[static_cast<std::size_t>(u)][static_cast<std::size_t>(u)] > 2) return false;
        for (int v = 0; v < n; ++v) {
            if (u == v) continue;
            long expected = g.adjacent(u, v) ? 1 : 0;
            if (gram[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)] != expected) return false;
        }
    }
    return true;
}

enum class KagomeBoundary { simple, dirichlet_delete };

struct KagomeCounting {
    int L = 0;
    KagomeBoundary boundary = KagomeBoundary::simple;
    CountingFunction counting;       // normalization 3*L^2
    long multiplicity_3_2 = 0;       // exact kernel dimension of Delta_K - 3/2
    Rat jump_3_2;                    // multiplicity / (3 L^2)
    int interior_hexagon_count = 0;
    int contained_hexagon_count = 0;
    double max_eigenvalue = 0.0;
    bool top_certificate = false;    // exact proof that spectrum <= 3/2 (simple boundary)
};

/// Counting function of the Kagome Laplacian on the L-patch with the exact
/// spectral data at 3/2 attached.
inline KagomeCounting kagome_counting(int L, KagomeBoundary boundary = KagomeBoundary::simple) {
    if (L < 2) throw std::invalid_argument("kagome_counting: L must be >= 2");
    KagomePatch patch = kagome_patch(L);
    RationalMatrix lap = build_operator(patch.graph, kagome_laplacian_spec());
    if (boundary == KagomeBoundary::dirichlet_delete) {
        VertexSet inner(patch.graph.vertex_count());
        for (int v = 0; v < patch.graph.vertex_count(); ++v)
            if (patch.graph.degree(v) == 4) inner.set(v);
        lap = restrict_simple(lap, patch.graph, inner);
    }
    const Rat three_halves = rat(3, 2);
    long mult = rational_kernel(lap.shifted(three_halves)).dimension;
    Spectrum spec = sym_eigenvalues(SymmetricMatrix::from_rational(lap));

    KagomeCounting out;
    out.L = L;
    out.boundary = boundary;
    out.counting = CountingFunction(spec.eigenvalues, rat(3L * L * L));
    out.counting.attach_exact(three_halves, mult);
    out.multiplicity_3_2 = mult;
    out.jump_3_2 = out.counting.jump_exact(three_halves);
    out.interior_hexagon_count = static_cast<int>(patch.interior_hexagons().size());
    out.contained_hexagon_count = static_cast<int>(patch.hexagons.size());
    out.max_eigenvalue = spec.eigenvalues.back();
    out.top_certificate = boundary == KagomeBoundary::simple ? flat_band_top_certificate(patch) : true;
    return out;
}

struct RigidityReport {
    std::vector<std::pair<Rat, int>> nonzero_witness_dims;  // energies with witnesses
    bool only_three_halves = true;         // no witness away from 3/2
    int dim_at_three_halves = 0;           // support = all full-degree vertices
    int dim_at_three_halves_strict = 0;    // support shrunk by one more collar
    int interior_hexagons = 0;
    bool witnesses_in_hexagon_span = true;  // exact rank test against the F_H family
};

/// Scans exact energies for compactly supported eigenfunctions of Delta_K on
/// the patch.  Rigidity: witnesses exist only at 3/2 and lie in the span of
/// the hexagon functions.
inline RigidityReport eigenvalue_rigidity_check(const KagomePatch& patch, const std::vector<Rat>& energies) {
    RigidityReport rep;
    const Rat three_halves = rat(3, 2);
    OperatorSpec spec = kagome_laplacian_spec();
    VertexSet support = full_ambient_support(patch.graph);
    VertexSet strict(patch.graph.vertex_count());
    for (int v = 0; v < patch.graph.vertex_count(); ++v) {
        if (!support.test(v)) continue;
        bool deep = true;
        for (int w : patch.graph.neighbors(v)) deep &= support.test(w);
        if (deep) strict.set(v);
    }
    std::vector<std::vector<Rat>> witnesses_at_flat;
    for (const Rat& e : energies) {
        FiniteSupportWitness w = finitely_supported_eigenfunction_exists(patch.graph, spec, e, support);
        if (!w.exists) continue;
        rep.nonzero_witness_dims.emplace_back(e, static_cast<int>(w.witnesses.size()));
        if (e != three_halves)
            rep.only_three_halves = false;
        else {
            rep.dim_at_three_halves = static_cast<int>(w.witnesses.size());
            witnesses_at_flat = w.witnesses;
        }
    }
    if (strict.count() > 0)
        rep.dim_at_three_halves_strict = static_cast<int>(
            finitely_supported_eigenfunction_exists(patch.graph, spec, three_halves, strict).witnesses.size());
    std::vector<int> interior = patch.interior_hexagons();
    rep.interior_hexagons = static_cast<int>(interior.size());
    if (!witnesses_at_flat.empty() && !interior.empty()) {
        int n = patch.graph.vertex_count();
        RationalMatrix hex_rows(static_cast<int>(interior.size()), n);
        for (std::size_t r = 0; r < interior.size(); ++r) {
            HexagonFunction f = hexagon_eigenfunction(patch, interior[r]);
            for (int j = 0; j < n; ++j) hex_rows.at(static_cast<int>(r), j) = f.values[static_cast<std::size_t>(j)];
        }
        int base_rank = rational_rank(hex_rows);
        RationalMatrix stacked(static_cast<int>(interior.size() + witnesses_at_flat.size()), n);
        for (int r = 0; r < hex_rows.rows; ++r)
            for (int j = 0; j < n; ++j) stacked.at(r, j) = hex_rows.at(r, j);
        for (std::size_t w = 0; w < witnesses_at_flat.size(); ++w)
            for (int j = 0; j < n; ++j)
                stacked.at(hex_rows.rows + static_cast<int>(w), j) = witnesses_at_flat[w][static_cast<std::size_t>(j)];
        rep.witnesses_in_hexagon_span = rational_rank(stacked) == base_rank;
    }
    return rep;
}

/// Candidate energies for finite-support scans: rationals p/q in [lo, hi] with
/// q <= 12, plus small-denominator roundings of the supplied floats.
inline std::vector<Rat> candidate_energies(const Rat& lo, const Rat& hi, const std::vector<double>& floats = {}) {
    std::set<Rat> out;
    for (long q = 1; q <= 12; ++q) {
        long p0 = static_cast<long>(std::floor(to_double(lo) * static_cast<double>(q))) - 1;
        long p1 = static_cast<long>(std::ceil(to_double(hi) * static_cast<double>(q))) + 1;
        for (long p = p0; p <= p1; ++p) {
            Rat e = rat(p, q);
            if (e >= lo && e <= hi) out.insert(e);
        }
    }
    for (double v : floats)
        for (long q = 1; q <= 12; ++q) {
            double pd = v * static_cast<double>(q);
            long p = std::lround(pd);
            if (std::fabs(pd - static_cast<double>(p)) < 1e-6 * q) {
                Rat e = rat(p, q);
                if (e >= lo && e <= hi) out.insert(e);
            }
        }
    return {out.begin(), out.end()};
}

}  // namespace latspec
