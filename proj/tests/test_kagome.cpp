#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "latspec/kagome.hpp"

#include <cmath>

using namespace latspec;

TEST_CASE("hexagon eigenfunction is exact") {
    KagomePatch patch = kagome_patch(4);
    auto interior = patch.interior_hexagons();
    REQUIRE(interior.size() == 4);
    for (int h : interior) {
        // the constructor re-verifies Delta_K F_H = (3/2) F_H exactly
        HexagonFunction f = hexagon_eigenfunction(patch, h);
        Rat sum(0);
        int support = 0;
        for (const Rat& v : f.values) {
            sum += v;
            if (v != 0) ++support;
        }
        CHECK(sum == 0);
        CHECK(support == 6);
        const auto& ring = patch.hexagons[static_cast<std::size_t>(h)];
        for (int k = 0; k < 6; ++k) {
            Rat expected = (k % 2 == 0) ? 1 : -1;
            CHECK(f.values[static_cast<std::size_t>(ring[static_cast<std::size_t>(k)])] == expected);
        }
    }
}

TEST_CASE("boundary hexagon is rejected") {
    KagomePatch p2 = kagome_patch(2);
    REQUIRE(p2.hexagons.size() == 1);
    CHECK(p2.interior_hexagons().empty());
    CHECK_THROWS_AS(hexagon_eigenfunction(p2, 0), std::invalid_argument);
}

TEST_CASE("hexagon family rank equals family size") {
    KagomePatch patch = kagome_patch(4);
    auto interior = patch.interior_hexagons();
    CHECK(hexagon_family_rank(patch, {interior[0]}) == 1);
    CHECK(hexagon_family_rank(patch, interior) == static_cast<int>(interior.size()));
    CHECK_THROWS_AS(hexagon_family_rank(patch, {interior[0], interior[0]}), std::invalid_argument);

    // two overlapping hexagons stay independent
    bool found_overlap = false;
    for (std::size_t a = 0; a < interior.size() && !found_overlap; ++a)
        for (std::size_t b = a + 1; b < interior.size() && !found_overlap; ++b) {
            const auto& ra = patch.hexagons[static_cast<std::size_t>(interior[a])];
            const auto& rb = patch.hexagons[static_cast<std::size_t>(interior[b])];
            int shared = 0;
            for (int u : ra)
                for (int v : rb) shared += u == v;
            if (shared > 0) {
                found_overlap = true;
                CHECK(hexagon_family_rank(patch, {interior[a], interior[b]}) == 2);
            }
        }
    CHECK(found_overlap);
}

TEST_CASE("kagome counting across L") {
    for (int L : {4, 6}) {
        KagomeCounting kc = kagome_counting(L);
        CHECK(kc.counting.value(-1e-6) == 0.0);  // positive semidefinite
        CHECK(kc.multiplicity_3_2 == (L - 1) * (L - 1));
        CHECK(kc.jump_3_2 == Rat((L - 1) * (L - 1)) / rat(3L * L * L));
        Rat lower = rat(1, 3) - rat(2, L);
        CHECK(kc.jump_3_2 >= lower);
        CHECK(kc.jump_3_2 <= rat(1, 3));
        CHECK(kc.max_eigenvalue <= 1.5 + 1e-9);
        CHECK(kc.top_certificate);
    }
    // jump nondecreasing in L
    CHECK(kagome_counting(4).jump_3_2 <= kagome_counting(6).jump_3_2);
    CHECK_THROWS_AS(kagome_counting(1), std::invalid_argument);
}

TEST_CASE("exact jump equals float cluster when the gap is clean") {
    for (int L = 2; L <= 6; ++L) {
        KagomeCounting kc = kagome_counting(L);
        const auto& eigs = kc.counting.eigenvalues();
        // gap below the flat band must be macroscopic before comparing the modes
        double below = -10.0;
        for (double e : eigs)
            if (e < 1.5 - 1e-6) below = std::max(below, e);
        REQUIRE(1.5 - below > 1e-6);
        CHECK(kc.counting.cluster_count(1.5, 1e-9) == kc.multiplicity_3_2);
        CHECK(kc.counting.jump_cluster(1.5, 1e-9) == doctest::Approx(to_double(kc.jump_3_2)).epsilon(1e-12));
    }
}

TEST_CASE("dirichlet deletion variant") {
    KagomeCounting kc = kagome_counting(4, KagomeBoundary::dirichlet_delete);
    // deleting the rim removes eigenvalues but the normalization stays 3 L^2
    CHECK(kc.counting.normalization() == rat(48));
    CHECK(static_cast<long>(kc.counting.eigenvalues().size()) < 48);
    CHECK(kc.max_eigenvalue <= 1.5 + 1e-9);
}

TEST_CASE("flat band top certificate") {
    for (int L : {2, 3, 5}) CHECK(flat_band_top_certificate(kagome_patch(L)));
}

TEST_CASE("kernel at 3/2 of the one-hexagon patch is the hexagon function") {
    KagomePatch patch = kagome_patch(2);
    RationalMatrix lap = build_operator(patch.graph, kagome_laplacian_spec());
    KernelResult k = rational_kernel(lap.shifted(rat(3, 2)));
    REQUIRE(k.dimension == 1);
    const auto& ring = patch.hexagons[0];
    const auto& v = k.basis[0];
    int nonzero = 0;
    for (const Rat& x : v) nonzero += x != 0;
    CHECK(nonzero == 6);
    // alternating signs around the contained hexagon
    for (int i = 0; i < 6; ++i) {
        CHECK(v[static_cast<std::size_t>(ring[static_cast<std::size_t>(i)])] != 0);
        CHECK(v[static_cast<std::size_t>(ring[static_cast<std::size_t>(i)])] ==
              -v[static_cast<std::size_t>(ring[static_cast<std::size_t>((i + 1) % 6)])]);
    }
}

TEST_CASE("trace formula cross-check at L=6") {
    const int L = 6;
    KagomePatch patch = kagome_patch(L);
    RationalMatrix lap = build_operator(patch.graph, kagome_laplacian_spec());
    EigenDecomposition dec = sym_eigensystem(SymmetricMatrix::from_rational(lap));
    KagomeCounting kc = kagome_counting(L);
    int cell = (L / 2) * L + L / 2;
    const auto& tri = patch.cell_vertices[static_cast<std::size_t>(cell)];
    for (double E : {0.25, 0.5, 0.75, 1.0, 1.25, 1.5}) {
        double trace = 0.0;
        for (int k = 0; k < dec.n; ++k) {
            if (dec.eigenvalues[static_cast<std::size_t>(k)] > E + 1e-9) break;
            for (int v : tri) trace += dec.vector_at(v, k) * dec.vector_at(v, k);
        }
        trace /= 3.0;
        CHECK(std::fabs(trace - kc.counting.value(E + 1e-9)) <= 0.05);
    }
}

TEST_CASE("eigenvalue rigidity") {
    KagomePatch patch = kagome_patch(4);
    // small sample of candidates plus the flat-band energy; the acceptance run
    // sweeps the full q <= 12 grid
    std::vector<Rat> energies{rat(1, 2), rat(1), rat(4, 3), rat(3, 2)};
    RigidityReport rep = eigenvalue_rigidity_check(patch, energies);
    CHECK(rep.only_three_halves);
    CHECK(rep.dim_at_three_halves == rep.interior_hexagons);
    CHECK(rep.witnesses_in_hexagon_span);
    CHECK(rep.nonzero_witness_dims.size() == 1);
    CHECK(rep.dim_at_three_halves_strict <= rep.dim_at_three_halves);
}
