#pragma once

#include "latspec/kagome.hpp"
#include "latspec/operators.hpp"

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace latspec {

/// Metric graph with every edge an interval of length 1; orientation fixed as
/// (min, max) per edge.
struct EquilateralMetricGraph {
    Graph underlying;
    std::vector<std::pair<int, int>> oriented_edges;

    static EquilateralMetricGraph from_graph(Graph g) {
        auto edges = g.edges();
        return {std::move(g), std::move(edges)};
    }

    long edge_count() const { return static_cast<long>(oriented_edges.size()); }
};

constexpr double kPi = 3.14159265358979323846;

/// Metric energies E <= e_max with cos(sqrt E) = 1 - lambda, excluding the
/// Dirichlet set {(pi k)^2 : k >= 1}.  Branches sqrt(E) = theta + 2 pi m and
/// 2 pi - theta + 2 pi m with theta = arccos(1 - lambda).
inline std::vector<double> correspondence_energies(double lambda, double e_max) {
    if (lambda < -1e-12 || lambda > 2.0 + 1e-12)
        throw std::invalid_argument("correspondence_energies: lambda outside [0,2]");
    lambda = std::min(std::max(lambda, 0.0), 2.0);
    if (e_max <= 0) throw std::invalid_argument("correspondence_energies: e_max must be positive");
    double theta = std::acos(1.0 - lambda);
    std::vector<double> roots;
    for (int m = 0;; ++m) {
        double r1 = theta + 2.0 * kPi * m;
        double r2 = 2.0 * kPi - theta + 2.0 * kPi * m;
        bool any = false;
        for (double r : {r1, r2}) {
            double e = r * r;
            if (e <= e_max) {
                any = true;
                roots.push_back(e);
            }
        }
        if (!any && r1 * r1 > e_max) break;
    }
    std::sort(roots.begin(), roots.end());
    std::vector<double> out;
    for (double e : roots) {
        if (e >= e_max) continue;
        // drop sqrt(E) in pi*Z entirely: (pi k)^2 with k >= 1 is the Dirichlet
        // set, and E = 0 (lambda in {0,2}) is folded into that bookkeeping too
        double k = std::sqrt(e) / kPi;
        if (std::fabs(k - std::round(k)) < 1e-9) continue;
        if (!out.empty() && e - out.back() < 1e-9) continue;
        out.push_back(e);
    }
    return out;
}

/// Dimension of the Dirichlet eigenspace at E = (pi k)^2: kernel of the
/// signed vertex-edge matrix M_k with +1 at the source and -(-1)^k at the
/// target of each edge (Kirchhoff current condition on a_e sin(k pi t)).
inline long dirichlet_multiplicity(const EquilateralMetricGraph& g, int k) {
    if (k < 1) throw std::invalid_argument("dirichlet_multiplicity: k must be >= 1");
    int nv = g.underlying.vertex_count();
    int ne = static_cast<int>(g.oriented_edges.size());
    if (ne == 0) return 0;
    RationalMatrix m(nv, ne);
    long target_sign = (k % 2 == 0) ? -1 : 1;  // -(-1)^k
    for (int e = 0; e < ne; ++e) {
        auto [src, dst] = g.oriented_edges[static_cast<std::size_t>(e)];
        m.at(src, e) += 1;
        m.at(dst, e) += target_sign;
    }
    return rational_kernel(m).dimension;
}

enum class MetricJumpOrigin { vertex_spectrum, dirichlet };

struct MetricJump {
    double energy = 0.0;
    Rat size;  // exact
    MetricJumpOrigin origin = MetricJumpOrigin::vertex_spectrum;
};

struct MetricIDS {
    int L = 0;
    double e_max = 0.0;
    long edge_count = 0;  // = vol, unit edge lengths
    std::vector<MetricJump> jumps;
    std::vector<std::pair<double, double>> samples;  // (E, N(E)), nondecreasing

    double value(double energy) const {
        double best = 0.0;
        for (const auto& [e, v] : samples) {
            if (e > energy) break;
            best = v;
        }
        return best;
    }

    const MetricJump* jump_near(double energy, double tol) const {
        for (const auto& j : jumps)
            if (std::fabs(j.energy - energy) <= tol) return &j;
        return nullptr;
    }
};

/// IDS of the equilateral metric Kagome patch, assembled from the discrete
/// restriction through the spectral correspondence (vertex part) plus the
/// Dirichlet eigenspaces at (pi k)^2.  Normalization is the patch volume,
/// i.e. its edge count.  Discrete eigenvalues at the endpoints 0 and 2 map
/// entirely into the Dirichlet set and are folded into that bookkeeping.
inline MetricIDS metric_kagome_ids(int L, double e_max, KagomeBoundary boundary = KagomeBoundary::simple) {
    if (L < 2) throw std::invalid_argument("metric_kagome_ids: L must be >= 2");
    if (e_max <= 0) throw std::invalid_argument("metric_kagome_ids: e_max must be positive");
    KagomePatch patch = kagome_patch(L);
    EquilateralMetricGraph mg = EquilateralMetricGraph::from_graph(patch.graph);
    KagomeCounting kc = kagome_counting(L, boundary);

    MetricIDS out;
    out.L = L;
    out.e_max = e_max;
    out.edge_count = mg.edge_count();
    const Rat volume = rat(out.edge_count);

    // point masses from the discrete spectrum through the correspondence
    std::vector<double> masses;
    for (double lambda : kc.counting.eigenvalues()) {
        double clamped = std::min(std::max(lambda, 0.0), 2.0);
        for (double e : correspondence_energies(clamped, e_max)) masses.push_back(e);
    }

    // Dirichlet masses at (pi k)^2
    std::vector<std::pair<double, long>> dirichlet;
    for (int k = 1;; ++k) {
        double e = (kPi * k) * (kPi * k);
        if (e > e_max) break;
        long mult = dirichlet_multiplicity(mg, k);
        dirichlet.emplace_back(e, mult);
        for (long c = 0; c < mult; ++c) masses.push_back(e);
    }
    std::sort(masses.begin(), masses.end());

    // macroscopic jump table: flat-band branches (exact multiplicity at 3/2)
    // plus the Dirichlet eigenspaces
    const Rat flat_jump = Rat(kc.multiplicity_3_2) / volume;
    for (double e : correspondence_energies(1.5, e_max)) {
        Rat size = flat_jump;
        size.canonicalize();
        out.jumps.push_back({e, size, MetricJumpOrigin::vertex_spectrum});
    }
    for (auto [e, mult] : dirichlet) {
        Rat size = Rat(mult) / volume;
        size.canonicalize();
        out.jumps.push_back({e, size, MetricJumpOrigin::dirichlet});
    }
    std::sort(out.jumps.begin(), out.jumps.end(), [](const MetricJump& a, const MetricJump& b) { return a.energy < b.energy; });

    // sampled distribution function: grid plus every mass point
    std::vector<double> sample_points = masses;
    int grid_points = 512;
    for (int i = 0; i <= grid_points; ++i) sample_points.push_back(e_max * i / grid_points);
    std::sort(sample_points.begin(), sample_points.end());
    sample_points.erase(std::unique(sample_points.begin(), sample_points.end()), sample_points.end());
    double vol_d = static_cast<double>(out.edge_count);
    for (double e : sample_points) {
        auto it = std::upper_bound(masses.begin(), masses.end(), e);
        out.samples.emplace_back(e, static_cast<double>(it - masses.begin()) / vol_d);
    }
    return out;
}

/// Exact correspondence checks on the triangle: discrete spectrum {0, 3/2},
/// loop eigenvalues (2 pi m / 3)^2, Dirichlet space at 4 pi^2.
struct C3Report {
    long mult_zero = 0;          // discrete multiplicity of 0 (expected 1)
    long mult_three_halves = 0;  // discrete multiplicity of 3/2 (expected 2)
    long dirichlet_k1 = 0;       // expected 0 (odd cycle, odd k)
    long dirichlet_k2 = 0;       // expected 1
    bool loop_values_match = true;
    bool dirichlet_excluded_from_correspondence = true;
    bool ok = false;
};

inline C3Report c3_cross_validation() {
    Graph triangle(3, {{0, 1}, {1, 2}, {0, 2}});
    OperatorSpec spec;
    spec.kind = OperatorKind::normalized_laplacian;
    RationalMatrix lap = build_operator(triangle, spec);
    C3Report rep;
    rep.mult_zero = rational_kernel(lap).dimension;
    rep.mult_three_halves = rational_kernel(lap.shifted(rat(3, 2))).dimension;
    EquilateralMetricGraph mg = EquilateralMetricGraph::from_graph(triangle);
    rep.dirichlet_k1 = dirichlet_multiplicity(mg, 1);
    rep.dirichlet_k2 = dirichlet_multiplicity(mg, 2);
    // loop of length 3: metric eigenvalues (2 pi m/3)^2; 1 - cos(2 pi m/3) is
    // 0 for m = 0 mod 3 and 3/2 otherwise
    for (int m = 0; m <= 6; ++m) {
        double lam = 1.0 - std::cos(2.0 * kPi * m / 3.0);
        double expected = (m % 3 == 0) ? 0.0 : 1.5;
        if (std::fabs(lam - expected) > 1e-12) rep.loop_values_match = false;
    }
    // m = 3 gives E = 4 pi^2 which the correspondence must skip
    for (double e : correspondence_energies(0.0, 50.0))
        if (std::fabs(e - 4.0 * kPi * kPi) < 1e-6) rep.dirichlet_excluded_from_correspondence = false;
    rep.ok = rep.mult_zero == 1 && rep.mult_three_halves == 2 && rep.dirichlet_k1 == 0 && rep.dirichlet_k2 == 1 &&
             rep.loop_values_match && rep.dirichlet_excluded_from_correspondence;
    return rep;
}

}  // namespace latspec
