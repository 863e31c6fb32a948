#pragma once

#include "latspec/lattice.hpp"
#include "latspec/operators.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace latspec {

/// Finite stage for discrete unique continuation problems: either the box
/// {0..L-1}^d or the cylinder Z_W x Z/H (transverse direction periodic, so
/// every non-rim column has full neighborhoods and slab-to-slab
/// propagation has no transverse leak).
class UcpGeometry {
public:
    static UcpGeometry box(int d, int L) {
        if (d < 1 || d > 3 || L < 1) throw std::invalid_argument("UcpGeometry::box: bad parameters");
        UcpGeometry g;
        g.kind_ = Kind::box;
        g.d_ = d;
        g.L_ = L;
        g.sites_ = static_cast<int>(box_site_count(d, L));
        return g;
    }

    static UcpGeometry cylinder(int width, int circumference) {
        if (width < 1 || circumference < 1) throw std::invalid_argument("UcpGeometry::cylinder: bad parameters");
        UcpGeometry g;
        g.kind_ = Kind::cylinder;
        g.W_ = width;
        g.H_ = circumference;
        g.sites_ = width * circumference;
        return g;
    }

    bool is_cylinder() const { return kind_ == Kind::cylinder; }
    int site_count() const { return sites_; }
    int ambient_degree() const { return kind_ == Kind::box ? 2 * d_ : 4; }

    int cylinder_site(int x, int y) const { return x * H_ + ((y % H_) + H_) % H_; }
    int cylinder_x(int site) const { return site / H_; }
    int cylinder_y(int site) const { return site % H_; }
    int width() const { return W_; }
    int circumference() const { return H_; }

    int box_dim() const { return d_; }
    int box_side() const { return L_; }

    /// All ambient neighbours, with repetition if the cylinder wraps onto the
    /// same site; empty when the site has ambient neighbours outside the stage.
    std::vector<int> full_neighbors(int site) const {
        std::vector<int> out;
        if (kind_ == Kind::box) {
            auto pt = box_point(site, d_, L_);
            for (int k = 0; k < d_; ++k) {
                for (int dir : {-1, +1}) {
                    auto q = pt;
                    q[static_cast<std::size_t>(k)] += dir;
                    if (q[static_cast<std::size_t>(k)] < 0 || q[static_cast<std::size_t>(k)] >= L_) return {};
                    out.push_back(box_index(q, d_, L_));
                }
            }
        } else {
            int x = cylinder_x(site), y = cylinder_y(site);
            if (x - 1 < 0 || x + 1 >= W_) return {};
            out.push_back(cylinder_site(x - 1, y));
            out.push_back(cylinder_site(x + 1, y));
            out.push_back(cylinder_site(x, y - 1));
            out.push_back(cylinder_site(x, y + 1));
        }
        return out;
    }

    bool has_full_neighborhood(int site) const { return !full_neighbors(site).empty(); }

    VertexSet full_neighborhood_sites() const {
        VertexSet s(sites_);
        for (int v = 0; v < sites_; ++v)
            if (has_full_neighborhood(v)) s.set(v);
        return s;
    }

private:
    enum class Kind { box, cylinder };
    Kind kind_ = Kind::box;
    int d_ = 0, L_ = 0, W_ = 0, H_ = 0, sites_ = 0;
};

/// (-Delta + V - E) f = 0 enforced on equation_set, f = 0 on zero_set.
struct ContinuationProblem {
    UcpGeometry geometry;
    VertexSet zero_set;
    VertexSet equation_set;
    std::vector<Rat> potential;  // empty means zero
    Rat energy{0};
};

struct SolutionSpace {
    int dimension = 0;
    std::vector<std::vector<Rat>> basis;
    bool degenerate = false;  // no constraints at all
};

inline RationalMatrix continuation_constraint_matrix(const ContinuationProblem& p) {
    const UcpGeometry& geo = p.geometry;
    int n = geo.site_count();
    if (p.zero_set.size() != n || p.equation_set.size() != n)
        throw std::invalid_argument("continuation: vertex set size mismatch");
    if (!p.potential.empty() && static_cast<int>(p.potential.size()) != n)
        throw std::invalid_argument("continuation: potential size mismatch");
    auto eq_sites = p.equation_set.to_vector();
    auto zero_sites = p.zero_set.to_vector();
    RationalMatrix m(static_cast<int>(eq_sites.size() + zero_sites.size()), n);
    int r = 0;
    for (int site : eq_sites) {
        auto nb = geo.full_neighbors(site);
        if (nb.empty())
            throw std::invalid_argument("continuation: equation site lacks a full neighborhood");
        m.at(r, site) = Rat(geo.ambient_degree()) + (p.potential.empty() ? Rat(0) : p.potential[static_cast<std::size_t>(site)]) - p.energy;
        for (int j : nb) m.at(r, j) -= 1;
        ++r;
    }
    for (int site : zero_sites) {
        m.at(r, site) = 1;
        ++r;
    }
    return m;
}

inline SolutionSpace continuation_dimension(const ContinuationProblem& p) {
    SolutionSpace out;
    if (p.equation_set.count() == 0 && p.zero_set.count() == 0) {
        out.degenerate = true;
        out.dimension = p.geometry.site_count();
        return out;
    }
    KernelResult k = rational_kernel(continuation_constraint_matrix(p));
    out.dimension = k.dimension;
    out.basis = std::move(k.basis);
    return out;
}

// ---- canonical zero sets ----

/// columns x0 <= x < x0+width of a cylinder
inline VertexSet cylinder_slab(const UcpGeometry& geo, int x0, int width) {
    VertexSet s(geo.site_count());
    for (int x = x0; x < x0 + width; ++x)
        for (int y = 0; y < geo.circumference(); ++y) s.set(geo.cylinder_site(x, y));
    return s;
}

/// { j : <j - center, nu> <= alpha } on a 2d box, coordinates centered at L/2
inline VertexSet box_halfspace(const UcpGeometry& geo, long nu1, long nu2, long alpha) {
    int L = geo.box_side(), c = L / 2;
    VertexSet s(geo.site_count());
    for (int site = 0; site < geo.site_count(); ++site) {
        auto pt = box_point(site, 2, L);
        long j1 = pt[0] - c, j2 = pt[1] - c;
        if (nu1 * j1 + nu2 * j2 <= alpha) s.set(site);
    }
    return s;
}

struct DirectionSurveyEntry {
    long nu1 = 0, nu2 = 0;
    bool on_cylinder = false;
    int dimension = 0;
};

/// Solution-space dimension for the half-space zero set in direction nu.
/// Axis-parallel directions run on the cylinder (slab of width 2), all other
/// directions on the centered box with equations at full-neighborhood sites.
inline DirectionSurveyEntry halfspace_direction_dimension(int L, long nu1, long nu2, const Rat& energy,
                                                          const std::vector<Rat>& potential = {}) {
    if (nu1 == 0 && nu2 == 0) throw std::invalid_argument("direction_survey: nu must be nonzero");
    DirectionSurveyEntry entry{nu1, nu2, false, 0};
    ContinuationProblem p;
    if (nu1 == 0 || nu2 == 0) {
        entry.on_cylinder = true;
        p.geometry = UcpGeometry::cylinder(L, 6);
        p.zero_set = cylinder_slab(p.geometry, 0, 2);
    } else {
        p.geometry = UcpGeometry::box(2, L);
        p.zero_set = box_halfspace(p.geometry, nu1, nu2, 0);
    }
    p.equation_set = p.geometry.full_neighborhood_sites();
    p.potential = potential;
    p.energy = energy;
    entry.dimension = continuation_dimension(p).dimension;
    return entry;
}

inline std::vector<DirectionSurveyEntry> direction_survey(int L, const std::vector<std::pair<long, long>>& directions,
                                                          const Rat& energy, const std::vector<Rat>& potential = {}) {
    std::vector<DirectionSurveyEntry> out;
    out.reserve(directions.size());
    for (auto [n1, n2] : directions) out.push_back(halfspace_direction_dimension(L, n1, n2, energy, potential));
    return out;
}

// ---- finitely supported eigenfunctions ----

struct FiniteSupportWitness {
    bool exists = false;
    std::vector<std::vector<Rat>> witnesses;  // full-length vectors, zero off the support
};

/// Is there an exact eigenfunction of (operator - E) supported inside
/// support_bound?  Rows are enforced on the support and its distance-1 collar;
/// every support vertex must carry its complete ambient neighborhood in g.
inline FiniteSupportWitness finitely_supported_eigenfunction_exists(const Graph& g, const OperatorSpec& spec,
                                                                    const Rat& energy, const VertexSet& support_bound) {
    int n = g.vertex_count();
    if (support_bound.size() != n) throw std::invalid_argument("finite support: set size mismatch");
    auto support = support_bound.to_vector();
    if (support.empty()) return {};
    for (int v : support)
        if (g.degree(v) != g.ambient_degree(v))
            throw std::invalid_argument("finite support: support vertex lacks its full ambient neighborhood");
    std::vector<int> col_of(static_cast<std::size_t>(n), -1);
    for (std::size_t c = 0; c < support.size(); ++c) col_of[static_cast<std::size_t>(support[c])] = static_cast<int>(c);
    std::vector<int> rows = support;
    for (int v : support)
        for (int w : g.neighbors(v))
            if (col_of[static_cast<std::size_t>(w)] < 0) rows.push_back(w);
    std::sort(rows.begin(), rows.end());
    rows.erase(std::unique(rows.begin(), rows.end()), rows.end());

    OperatorSpec shifted = spec;
    shifted.energy_shift = shifted.energy_shift ? *shifted.energy_shift + energy : energy;
    RationalMatrix full = build_operator(g, shifted);
    RationalMatrix m(static_cast<int>(rows.size()), static_cast<int>(support.size()));
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < support.size(); ++c)
            m.at(static_cast<int>(r), static_cast<int>(c)) = full.at(rows[r], support[c]);

    KernelResult k = rational_kernel(m);
    FiniteSupportWitness out;
    out.exists = k.dimension > 0;
    for (const auto& v : k.basis) {
        std::vector<Rat> w(static_cast<std::size_t>(n), Rat(0));
        for (std::size_t c = 0; c < support.size(); ++c) w[static_cast<std::size_t>(support[c])] = v[c];
        out.witnesses.push_back(std::move(w));
    }
    return out;
}

/// Vertices of g whose patch degree equals the ambient degree -- the largest
/// legal support bound for finite-support scans.
inline VertexSet full_ambient_support(const Graph& g) {
    VertexSet s(g.vertex_count());
    for (int v = 0; v < g.vertex_count(); ++v)
        if (g.degree(v) == g.ambient_degree(v)) s.set(v);
    return s;
}

// ---- boundary determination ----

/// max run of eigenvalues not separated by a gap > tol
inline long max_cluster_multiplicity(const std::vector<double>& sorted_eigs, double gap_tol) {
    long best = 0, run = 0;
    for (std::size_t i = 0; i < sorted_eigs.size(); ++i) {
        if (i == 0 || sorted_eigs[i] - sorted_eigs[i - 1] > gap_tol)
            run = 1;
        else
            ++run;
        best = std::max(best, run);
    }
    return best;
}

struct BoundaryDeterminationReport {
    int L = 0;
    long collar_size = 0;
    struct Entry {
        Rat energy;
        long multiplicity = 0;
    };
    std::vector<Entry> entries;          // exact multiplicities at the requested energies
    long max_float_multiplicity = 0;     // largest cluster of the full float spectrum
    bool bound_holds = false;            // all of the above <= collar_size
    Rat max_ratio;                       // max multiplicity / L^2
};

/// Eigenvalue multiplicities of -Delta + V on the L-box with simple boundary
/// conditions, against the second-collar cardinality.
inline BoundaryDeterminationReport boundary_determination_bound(int L, const std::vector<Rat>& potential,
                                                                const std::vector<Rat>& exact_energies) {
    if (L < 5) throw std::invalid_argument("boundary_determination_bound: L must be >= 5");
    Graph g = zd_box(2, L);
    OperatorSpec spec;
    spec.kind = OperatorKind::schrodinger;
    if (!potential.empty()) spec.potential = potential;
    RationalMatrix m = build_operator(g, spec);

    BoundaryDeterminationReport rep;
    rep.L = L;
    rep.collar_size = boundary_collar(L, 2, 2).count();
    long max_mult = 0;
    for (const Rat& e : exact_energies) {
        long mult = rational_kernel(m.shifted(e)).dimension;
        rep.entries.push_back({e, mult});
        max_mult = std::max(max_mult, mult);
    }
    Spectrum spec_f = sym_eigenvalues(SymmetricMatrix::from_rational(m));
    rep.max_float_multiplicity = max_cluster_multiplicity(spec_f.eigenvalues, 1e-8);
    max_mult = std::max(max_mult, rep.max_float_multiplicity);
    rep.bound_holds = max_mult <= rep.collar_size;
    rep.max_ratio = Rat(max_mult) / rat(static_cast<long>(L) * L);
    rep.max_ratio.canonicalize();
    return rep;
}

}  // namespace latspec
