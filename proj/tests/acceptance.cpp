// Acceptance suite: one line per criterion, nonzero exit when any fails.

#include "latspec/curvature.hpp"
#include "latspec/kagome.hpp"
#include "latspec/percolation.hpp"
#include "latspec/quantum_graph.hpp"
#include "latspec/rng.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

using namespace latspec;

namespace {

struct Criterion {
    std::string id;
    std::string label;
    double budget_seconds;
    std::function<bool(std::string&)> run;
};

bool run_all(const std::vector<Criterion>& criteria) {
    bool all_ok = true;
    for (const auto& c : criteria) {
        auto t0 = std::chrono::steady_clock::now();
        std::string detail;
        bool ok = false;
        try {
            ok = c.run(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (secs > c.budget_seconds) {
            ok = false;
            detail += (detail.empty() ? "" : "; ") + std::string("runtime over budget");
        }
        std::printf("%s  %s  %s  [%.2f s / %.0f s]%s%s\n", ok ? "PASS" : "FAIL", c.id.c_str(), c.label.c_str(), secs,
                    c.budget_seconds, detail.empty() ? "" : "  -- ", detail.c_str());
        std::fflush(stdout);
        all_ok &= ok;
    }
    return all_ok;
}

}  // namespace

int main() {
    std::vector<Criterion> criteria;

    criteria.push_back({"C1", "kagome eigen-equation exact for every interior hexagon, L=4..8", 5.0, [](std::string& detail) {
        long checked = 0;
        for (int L = 4; L <= 8; ++L) {
            KagomePatch patch = kagome_patch(L);
            for (int h : patch.interior_hexagons()) {
                hexagon_eigenfunction(patch, h);  // throws unless Delta_K F_H = (3/2) F_H exactly
                ++checked;
            }
        }
        detail = std::to_string(checked) + " hexagons verified with zero residual";
        return checked > 0;
    }});

    criteria.push_back({"C2", "kagome IDS jump at 3/2 in [1/3 - 2/L, 1/3], nondecreasing over L in {4,6,8}", 30.0,
                        [](std::string& detail) {
        Rat prev(-1);
        bool ok = true;
        for (int L : {4, 6, 8}) {
            KagomeCounting kc = kagome_counting(L);
            Rat lower = rat(1, 3) - rat(2, L);
            ok &= kc.jump_3_2 >= lower && kc.jump_3_2 <= rat(1, 3) && kc.jump_3_2 >= prev;
            prev = kc.jump_3_2;
            detail += "L=" + std::to_string(L) + ": " + kc.jump_3_2.get_str() + "  ";
        }
        return ok;
    }});

    criteria.push_back({"C3", "kagome spectral top: max eigenvalue <= 3/2 + 1e-9 and exact N(3/2) = 1 for L <= 8", 60.0,
                        [](std::string& detail) {
        bool ok = true;
        for (int L = 2; L <= 8; ++L) {
            KagomeCounting kc = kagome_counting(L);
            bool float_top = kc.max_eigenvalue <= 1.5 + 1e-9;
            // the integer certificate proves no eigenvalue exceeds 3/2, hence
            // N(3/2) = (3 L^2)/(3 L^2) = 1 exactly
            bool exact_top = kc.top_certificate;
            bool accounted = kc.counting.cluster_count(1.5, 1e-9) == kc.multiplicity_3_2;
            ok &= float_top && exact_top && accounted;
            if (!(float_top && exact_top && accounted)) detail += "L=" + std::to_string(L) + " failed  ";
        }
        if (ok) detail = "certificate A+2I = T^tT + D held for all L";
        return ok;
    }});

    criteria.push_back({"C4", "Z^2: no finitely supported eigenfunction (20 seeded pairs, L=9); multiplicity <= |collar| for L in {7,11}", 120.0,
                        [](std::string& detail) {
        Graph g = zd_box(2, 9);
        VertexSet support = full_ambient_support(g);
        OperatorSpec spec;
        spec.kind = OperatorKind::schrodinger;
        int false_count = 0;
        for (std::uint64_t pair = 0; pair < 20; ++pair) {
            std::vector<Rat> v(81);
            for (int i = 0; i < 81; ++i) v[static_cast<std::size_t>(i)] = rng::small_rational(1000 + pair, static_cast<std::uint64_t>(i));
            spec.potential = v;
            Rat e = rng::small_rational(2000 + pair, 0);
            if (!finitely_supported_eigenfunction_exists(g, spec, e, support).exists) ++false_count;
        }
        bool ok = false_count == 20;
        detail = std::to_string(false_count) + "/20 pairs witness-free";
        for (int L : {7, 11}) {
            BoundaryDeterminationReport rep = boundary_determination_bound(L, {}, {rat(4)});
            ok &= rep.bound_holds;
            detail += "; L=" + std::to_string(L) + " max mult " + std::to_string(std::max(rep.max_float_multiplicity, rep.entries[0].multiplicity)) +
                      " <= collar " + std::to_string(rep.collar_size);
        }
        return ok;
    }});

    criteria.push_back({"C5", "UCP dimensions: cylinder slab 0, slab-minus-point 1, diagonal >= 1 nondecreasing (L=5,7,9)", 30.0,
                        [](std::string& detail) {
        ContinuationProblem p;
        p.geometry = UcpGeometry::cylinder(8, 6);
        p.zero_set = cylinder_slab(p.geometry, 0, 2);
        p.equation_set = p.geometry.full_neighborhood_sites();
        int slab_dim = continuation_dimension(p).dimension;
        p.zero_set.set(p.geometry.cylinder_site(0, 2), false);
        int omitted_dim = continuation_dimension(p).dimension;
        bool ok = slab_dim == 0 && omitted_dim == 1;
        detail = "slab " + std::to_string(slab_dim) + ", minus-point " + std::to_string(omitted_dim) + ", diagonal";
        int prev = 0;
        for (int L : {5, 7, 9}) {
            int dim = halfspace_direction_dimension(L, 1, 1, rat(0)).dimension;
            ok &= dim >= 1 && dim >= prev;
            prev = dim;
            detail += " " + std::to_string(dim);
        }
        return ok;
    }});

    criteria.push_back({"C6", "percolation: catalog(4) contains {0,+-1,+-sqrt2,+-2}; jump at 0 >= p(1-p)^4 - 3 sem (p=0.6, L=60, 50 trials)", 300.0,
                        [](std::string& detail) {
        DiscontinuityCatalog cat = discontinuity_catalog(4);
        bool ok = true;
        for (double want : {0.0, 1.0, -1.0, std::sqrt(2.0), -std::sqrt(2.0), 2.0, -2.0}) {
            bool found = false;
            for (double e : cat.all_energies()) found |= std::fabs(e - want) <= 1e-9;
            ok &= found;
        }
        EmpiricalIds ids = empirical_ids(60, 0.6, 50, 7, {0.0}, 4, 2);
        double bound = 0.6 * std::pow(0.4, 4);
        bool jump_ok = false;
        for (const auto& j : ids.jumps)
            if (std::fabs(j.energy) <= 1e-9) {
                jump_ok = j.mean >= bound - 3 * j.sem;
                char buf[160];
                std::snprintf(buf, sizeof buf, "jump@0 = %.5f (sem %.5f) vs bound %.5f", j.mean, j.sem, bound);
                detail = buf;
            }
        return ok && jump_ok;
    }});

    criteria.push_back({"C7", "atomless potential: no cross-cluster coincidence in 20 trials (L=30, p=0.6, tol 1e-9)", 120.0,
                        [](std::string& detail) {
        int bad = 0;
        long max_mult = 0;
        for (std::uint64_t t = 0; t < 20; ++t) {
            PercolationSample s = sample_sites(30, 2, 0.6, 11 ^ t);
            CoincidenceReport rep = spectral_coincidences(percolation_cluster_spectra(s, 500 + t), 1e-9);
            max_mult = std::max(max_mult, rep.max_multiplicity_within_cluster);
            bad += rep.cross_cluster_coincidences > 0;
        }
        detail = "coincidence trials " + std::to_string(bad) + "/20, max within-cluster multiplicity " + std::to_string(max_mult);
        return bad == 0 && max_mult <= 1;
    }});

    criteria.push_back({"C8", "metric kagome jumps at L=6 (1/6 within 2/L, 1/2 within 3/L) and exact C3 cross-validation", 60.0,
                        [](std::string& detail) {
        const int L = 6;
        MetricIDS ids = metric_kagome_ids(L, 45.0);
        double b1 = (2.0 * kPi / 3.0) * (2.0 * kPi / 3.0);
        double b2 = (4.0 * kPi / 3.0) * (4.0 * kPi / 3.0);
        bool ok = true;
        char buf[256];
        const MetricJump* j1 = ids.jump_near(b1, 1e-9);
        const MetricJump* j2 = ids.jump_near(b2, 1e-9);
        const MetricJump* d1 = ids.jump_near(kPi * kPi, 1e-9);
        const MetricJump* d2 = ids.jump_near(4 * kPi * kPi, 1e-9);
        ok &= j1 && std::fabs(to_double(j1->size) - 1.0 / 6) <= 2.0 / L;
        ok &= j2 && std::fabs(to_double(j2->size) - 1.0 / 6) <= 2.0 / L;
        ok &= d1 && std::fabs(to_double(d1->size) - 0.5) <= 3.0 / L;
        ok &= d2 && std::fabs(to_double(d2->size) - 0.5) <= 3.0 / L;
        std::snprintf(buf, sizeof buf, "sizes %.4f %.4f %.4f %.4f", j1 ? to_double(j1->size) : -1,
                      j2 ? to_double(j2->size) : -1, d1 ? to_double(d1->size) : -1, d2 ? to_double(d2->size) : -1);
        detail = buf;
        C3Report c3 = c3_cross_validation();
        ok &= c3.ok;
        detail += c3.ok ? "; C3 exact" : "; C3 FAILED";
        return ok;
    }});

    criteria.push_back({"C9", "curvature: square/triangular/hexagonal nonpositive with zero witnesses; kagome positive corners 1/12 and 3/2 witness", 120.0,
                        [](std::string& detail) {
        bool ok = true;
        for (auto kind : {TessellationKind::square, TessellationKind::triangular, TessellationKind::hexagonal}) {
            Tessellation t = tessellation_patch(kind, kind == TessellationKind::hexagonal ? 3 : 5);
            OperatorSpec spec;
            spec.kind = OperatorKind::normalized_laplacian;
            auto floats = sym_eigenvalues(SymmetricMatrix::from_rational(build_operator(t.graph, spec))).eigenvalues;
            CurvatureSupportScan scan = curvature_vs_support_scan(t, candidate_energies(rat(0), rat(2), floats), 2);
            ok &= scan.curvature.nonpositive && scan.witness_energies.empty();
        }
        Tessellation kag = tessellation_patch(TessellationKind::kagome, 5);
        OperatorSpec spec;
        spec.kind = OperatorKind::normalized_laplacian;
        auto floats = sym_eigenvalues(SymmetricMatrix::from_rational(build_operator(kag.graph, spec))).eigenvalues;
        CurvatureSupportScan kscan = curvature_vs_support_scan(kag, candidate_energies(rat(0), rat(2), floats), 2);
        bool kag_ok = !kscan.curvature.nonpositive && kscan.curvature.max_curvature == rat(1, 12) &&
                      kscan.witness_energies.size() == 1 && kscan.witness_energies[0] == rat(3, 2);
        for (const Corner& c : kscan.curvature.positive_corners)
            kag_ok &= corner_curvature(kag, c) == rat(1, 12);
        ok &= kag_ok;
        detail = "kagome positive corners " + std::to_string(kscan.curvature.positive_corners.size()) +
                 (kag_ok ? ", witness at 3/2" : ", FAILED");
        return ok;
    }});

    bool ok = run_all(criteria);
    std::printf("%s\n", ok ? "ACCEPTANCE: all criteria passed" : "ACCEPTANCE: FAILURES PRESENT");
    return ok ? 0 : 1;
}
