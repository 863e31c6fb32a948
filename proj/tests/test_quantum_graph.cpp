#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "latspec/quantum_graph.hpp"
#include "latspec/rng.hpp"

#include <cmath>
#include <set>

using namespace latspec;

namespace {

Graph random_connected_graph(std::uint64_t seed, int max_n) {
    int n = 3 + static_cast<int>(rng::at(seed, 0) % static_cast<std::uint64_t>(max_n - 2));
    std::set<std::pair<int, int>> edges;
    for (int v = 1; v < n; ++v) {
        int u = static_cast<int>(rng::at(seed, 100 + static_cast<std::uint64_t>(v)) % static_cast<std::uint64_t>(v));
        edges.insert({u, v});
    }
    int extra = static_cast<int>(rng::at(seed, 9) % 4);
    std::uint64_t ctr = 500;
    while (extra > 0 && ctr < 600) {
        int a = static_cast<int>(rng::at(seed, ctr++) % static_cast<std::uint64_t>(n));
        int b = static_cast<int>(rng::at(seed, ctr++) % static_cast<std::uint64_t>(n));
        if (a == b) continue;
        if (edges.insert({std::min(a, b), std::max(a, b)}).second) --extra;
    }
    return Graph(n, {edges.begin(), edges.end()});
}

}  // namespace

TEST_CASE("correspondence energies for the flat band") {
    auto e = correspondence_energies(1.5, 50.0);
    REQUIRE(e.size() == 2);
    CHECK(e[0] == doctest::Approx(4.38649).epsilon(1e-5));
    CHECK(e[1] == doctest::Approx(17.5460).epsilon(1e-5));
    double b1 = (2.0 * kPi / 3.0) * (2.0 * kPi / 3.0);
    double b2 = (4.0 * kPi / 3.0) * (4.0 * kPi / 3.0);
    CHECK(e[0] == doctest::Approx(b1).epsilon(1e-12));
    CHECK(e[1] == doctest::Approx(b2).epsilon(1e-12));
}

TEST_CASE("correspondence endpoints fold into the Dirichlet set") {
    CHECK(correspondence_energies(0.0, 100.0).empty());
    CHECK(correspondence_energies(2.0, 100.0).empty());
    CHECK_THROWS_AS(correspondence_energies(-0.5, 10.0), std::invalid_argument);
    CHECK_THROWS_AS(correspondence_energies(2.5, 10.0), std::invalid_argument);
}

TEST_CASE("correspondence energies for lambda = 1") {
    auto e = correspondence_energies(1.0, 70.0);
    std::vector<double> expected;
    for (double r : {kPi / 2, 3 * kPi / 2, 5 * kPi / 2}) expected.push_back(r * r);
    REQUIRE(e.size() == expected.size());
    for (std::size_t i = 0; i < e.size(); ++i) CHECK(e[i] == doctest::Approx(expected[i]).epsilon(1e-12));
}

TEST_CASE("correspondence output invariants") {
    for (double lambda : {0.3, 0.9, 1.5, 1.97}) {
        auto e = correspondence_energies(lambda, 300.0);
        for (std::size_t i = 0; i < e.size(); ++i) {
            CHECK(e[i] < 300.0);
            if (i > 0) CHECK(e[i] > e[i - 1]);
            double k = std::sqrt(e[i]) / kPi;
            CHECK(std::fabs(k - std::round(k)) > 1e-9);
        }
    }
}

TEST_CASE("dirichlet multiplicity on the triangle") {
    Graph triangle(3, {{0, 1}, {1, 2}, {0, 2}});
    EquilateralMetricGraph mg = EquilateralMetricGraph::from_graph(triangle);
    CHECK(dirichlet_multiplicity(mg, 1) == 0);  // odd cycle needs even k
    CHECK(dirichlet_multiplicity(mg, 2) == 1);
    CHECK(dirichlet_multiplicity(mg, 3) == 0);
    CHECK(dirichlet_multiplicity(mg, 4) == 1);
    CHECK_THROWS_AS(dirichlet_multiplicity(mg, 0), std::invalid_argument);
}

TEST_CASE("dirichlet multiplicity depends on k only through parity") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        Graph g = random_connected_graph(seed * 13, 12);
        EquilateralMetricGraph mg = EquilateralMetricGraph::from_graph(g);
        CHECK(dirichlet_multiplicity(mg, 1) == dirichlet_multiplicity(mg, 3));
        CHECK(dirichlet_multiplicity(mg, 2) == dirichlet_multiplicity(mg, 4));
    }
}

TEST_CASE("non-bipartite counts |E|-|V| and |E|-|V|+1") {
    Graph triangle(3, {{0, 1}, {1, 2}, {0, 2}});
    EquilateralMetricGraph mt = EquilateralMetricGraph::from_graph(triangle);
    CHECK(dirichlet_multiplicity(mt, 1) == 3 - 3);
    CHECK(dirichlet_multiplicity(mt, 2) == 3 - 3 + 1);

    for (int L : {3, 4}) {
        KagomePatch patch = kagome_patch(L);
        EquilateralMetricGraph mg = EquilateralMetricGraph::from_graph(patch.graph);
        long V = patch.graph.vertex_count(), E = mg.edge_count();
        CHECK(dirichlet_multiplicity(mg, 1) == E - V);
        CHECK(dirichlet_multiplicity(mg, 2) == E - V + 1);
    }
}

TEST_CASE("metric kagome ids") {
    const int L = 4;
    MetricIDS ids = metric_kagome_ids(L, 45.0);
    CHECK(ids.edge_count > 0);

    double b1 = (2.0 * kPi / 3.0) * (2.0 * kPi / 3.0);
    double b2 = (4.0 * kPi / 3.0) * (4.0 * kPi / 3.0);
    const MetricJump* j1 = ids.jump_near(b1, 1e-9);
    const MetricJump* j2 = ids.jump_near(b2, 1e-9);
    REQUIRE(j1);
    REQUIRE(j2);
    CHECK(j1->origin == MetricJumpOrigin::vertex_spectrum);
    CHECK(j1->size == Rat(9) / Rat(ids.edge_count));  // (L-1)^2 flat-band copies
    CHECK(j2->size == j1->size);

    const MetricJump* d1 = ids.jump_near(kPi * kPi, 1e-9);
    const MetricJump* d2 = ids.jump_near(4 * kPi * kPi, 1e-9);
    REQUIRE(d1);
    REQUIRE(d2);
    CHECK(d1->origin == MetricJumpOrigin::dirichlet);
    long V = 3L * L * L, E = ids.edge_count;
    CHECK(d1->size == Rat(E - V) / Rat(E));
    CHECK(d2->size == Rat(E - V + 1) / Rat(E));

    // sampled N is a distribution function starting at 0 mass below the
    // first eigenvalue branch
    CHECK(ids.samples.front().second >= 0.0);
    for (std::size_t i = 1; i < ids.samples.size(); ++i) {
        CHECK(ids.samples[i].second >= ids.samples[i - 1].second);
        CHECK(ids.samples[i].first >= ids.samples[i - 1].first);
    }
    for (const auto& j : ids.jumps) CHECK(j.size > 0);

    // total jump mass at the four macroscopic energies stays below total mass
    Rat macro(0);
    for (const auto& j : ids.jumps) macro += j.size;
    CHECK(macro < Rat(4));
}

TEST_CASE("c3 cross validation") {
    C3Report rep = c3_cross_validation();
    CHECK(rep.mult_zero == 1);
    CHECK(rep.mult_three_halves == 2);
    CHECK(rep.dirichlet_k1 == 0);
    CHECK(rep.dirichlet_k2 == 1);
    CHECK(rep.loop_values_match);
    CHECK(rep.dirichlet_excluded_from_correspondence);
    CHECK(rep.ok);
}
