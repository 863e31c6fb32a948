#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "latspec/lattice.hpp"

#include <map>
#include <set>

using namespace latspec;

TEST_CASE("zd_box shapes") {
    Graph p3 = zd_box(1, 3);
    CHECK(p3.vertex_count() == 3);
    CHECK(p3.edge_count() == 2);

    Graph b3 = zd_box(2, 3);
    CHECK(b3.vertex_count() == 9);
    CHECK(b3.edge_count() == 12);

    Graph b5 = zd_box(2, 5);
    CHECK(b5.degree(box_index({0, 0}, 2, 5)) == 2);
    CHECK(b5.degree(box_index({2, 0}, 2, 5)) == 3);
    CHECK(b5.degree(box_index({2, 2}, 2, 5)) == 4);

    for (int d = 1; d <= 3; ++d)
        for (int L = 1; L <= 4; ++L) {
            Graph g = zd_box(d, L);
            long expected_edges = 0;
            long cross = 1;
            for (int k = 1; k < d; ++k) cross *= L;
            expected_edges = static_cast<long>(d) * cross * (L - 1);
            CHECK(g.vertex_count() == box_site_count(d, L));
            CHECK(g.edge_count() == expected_edges);
        }

    CHECK_THROWS_AS(zd_box(2, 1001), std::invalid_argument);
    CHECK_THROWS_AS(zd_box(4, 2), std::invalid_argument);
}

TEST_CASE("kagome patch L=1") {
    KagomePatch p = kagome_patch(1);
    CHECK(p.graph.vertex_count() == 3);
    CHECK(p.graph.edge_count() == 2);
    CHECK(p.hexagons.empty());
}

TEST_CASE("kagome patch structure") {
    for (int L = 2; L <= 8; ++L) {
        KagomePatch p = kagome_patch(L);
        CHECK(p.graph.vertex_count() == 3 * L * L);
        CHECK(static_cast<int>(p.cells.size()) == L * L);
        // hexagons fully contained: exactly (L-1)^2 for this cornered patch
        CHECK(static_cast<int>(p.hexagons.size()) == (L - 1) * (L - 1));
        CHECK(static_cast<int>(p.hexagons.size()) >= (L - 2) * (L - 2));
        CHECK(static_cast<int>(p.hexagons.size()) <= L * L);

        // every hexagon is a 6-cycle of unit steps with distinct vertices
        const auto& coords = p.graph.coords();
        const QuadExt one(rat(1));
        for (const auto& hex : p.hexagons) {
            std::set<int> distinct(hex.begin(), hex.end());
            CHECK(distinct.size() == 6);
            for (int k = 0; k < 6; ++k) {
                int a = hex[static_cast<std::size_t>(k)], b = hex[static_cast<std::size_t>((k + 1) % 6)];
                CHECK(p.graph.adjacent(a, b));
                CHECK(squared_distance(coords[static_cast<std::size_t>(a)], coords[static_cast<std::size_t>(b)]) == one);
            }
        }
    }
}

TEST_CASE("kagome interior degree is 4") {
    KagomePatch p = kagome_patch(4);
    int interior = 0;
    for (int v = 0; v < p.graph.vertex_count(); ++v) {
        CHECK(p.graph.degree(v) <= 4);
        if (p.graph.degree(v) == 4) ++interior;
    }
    CHECK(interior > 0);
    // L=2 already contains a full hexagon
    CHECK(kagome_patch(2).hexagons.size() == 1);
}

TEST_CASE("kagome hexagon centers on the odd grid") {
    KagomePatch p = kagome_patch(4);
    for (std::size_t h = 0; h < p.hexagons.size(); ++h) {
        auto [a, b] = p.hexagon_centers[h];
        CHECK(a >= 0);
        CHECK(b >= 0);
        CHECK(a < 3);
        CHECK(b < 3);
    }
}

TEST_CASE("square tessellation") {
    Tessellation t = tessellation_patch(TessellationKind::square, 3);
    CHECK(t.faces.size() == 9);
    int interior_vertices = 0, interior_faces = 0;
    for (int v = 0; v < t.graph.vertex_count(); ++v)
        if (t.vertex_interior[static_cast<std::size_t>(v)]) {
            ++interior_vertices;
            CHECK(t.graph.degree(v) == 4);
        }
    for (std::size_t f = 0; f < t.faces.size(); ++f)
        if (t.face_interior[f]) {
            ++interior_faces;
            CHECK(t.face_sides[f] == 4);
        }
    CHECK(interior_vertices == 4);
    CHECK(interior_faces == 1);
}

TEST_CASE("triangular tessellation") {
    Tessellation t = tessellation_patch(TessellationKind::triangular, 4);
    CHECK(t.faces.size() == 32);  // 2 L^2
    bool found_interior = false;
    for (int v = 0; v < t.graph.vertex_count(); ++v)
        if (t.vertex_interior[static_cast<std::size_t>(v)]) {
            found_interior = true;
            CHECK(t.graph.degree(v) == 6);
        }
    CHECK(found_interior);
    for (int s : t.face_sides) CHECK(s == 3);
}

TEST_CASE("hexagonal tessellation") {
    Tessellation t = tessellation_patch(TessellationKind::hexagonal, 2);
    CHECK(!t.faces.empty());
    bool found_interior = false;
    for (int v = 0; v < t.graph.vertex_count(); ++v) {
        CHECK(t.graph.degree(v) <= 3);
        if (t.vertex_interior[static_cast<std::size_t>(v)]) {
            found_interior = true;
            CHECK(t.graph.degree(v) == 3);
        }
    }
    CHECK(found_interior);
    for (int s : t.face_sides) CHECK(s == 6);
}

TEST_CASE("kagome tessellation face sides") {
    Tessellation t = tessellation_patch(TessellationKind::kagome, 3);
    std::set<int> interior_sides;
    for (std::size_t f = 0; f < t.faces.size(); ++f)
        if (t.face_interior[f]) interior_sides.insert(t.face_sides[f]);
    for (int s : interior_sides) CHECK((s == 3 || s == 6));
    CHECK(!interior_sides.empty());

    // faces listed as closed walks along edges
    for (const auto& face : t.faces)
        for (std::size_t k = 0; k < face.size(); ++k)
            CHECK(t.graph.adjacent(face[k], face[(k + 1) % face.size()]));

    // interior edges lie in exactly two faces
    std::map<std::pair<int, int>, int> edge_faces;
    for (const auto& face : t.faces)
        for (std::size_t k = 0; k < face.size(); ++k) {
            int a = face[k], b = face[(k + 1) % face.size()];
            edge_faces[{std::min(a, b), std::max(a, b)}]++;
        }
    for (auto [edge, count] : edge_faces) {
        if (t.vertex_interior[static_cast<std::size_t>(edge.first)] &&
            t.vertex_interior[static_cast<std::size_t>(edge.second)])
            CHECK(count == 2);
    }
}

TEST_CASE("unknown tessellation kind") {
    CHECK_THROWS_AS(tessellation_kind_from_string("penrose"), std::invalid_argument);
}
