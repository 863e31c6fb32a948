#pragma once

#include "latspec/graph.hpp"
#include "latspec/rational.hpp"

#include <array>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace latspec {

/// Nearest-neighbour box {0..L-1}^d in Z^d.
inline Graph zd_box(int d, int L) {
    if (d < 1 || d > 3) throw std::invalid_argument("zd_box: d must be 1, 2 or 3");
    if (L < 1) throw std::invalid_argument("zd_box: L must be >= 1");
    long n = box_site_count(d, L);
    if (n > 1000000) throw std::invalid_argument("zd_box: more than 1e6 sites");
    std::vector<std::pair<int, int>> edges;
    for (int idx = 0; idx < static_cast<int>(n); ++idx) {
        auto pt = box_point(idx, d, L);
        for (int k = 0; k < d; ++k) {
            if (pt[static_cast<std::size_t>(k)] + 1 < L) {
                auto q = pt;
                ++q[static_cast<std::size_t>(k)];
                edges.emplace_back(idx, box_index(q, d, L));
            }
        }
    }
    std::optional<std::vector<PlanePoint>> coords;
    std::optional<std::vector<LatticeLabel>> labels;
    if (d <= 2) {
        coords.emplace();
        labels.emplace();
        for (int idx = 0; idx < static_cast<int>(n); ++idx) {
            auto pt = box_point(idx, d, L);
            long x = pt[0], y = d == 2 ? pt[1] : 0;
            coords->push_back({QuadExt(rat(x)), QuadExt(rat(y))});
            labels->push_back({x, y, 0});
        }
    }
    std::vector<int> amb(static_cast<std::size_t>(n), 2 * d);
    return Graph(static_cast<int>(n), edges, std::move(coords), std::move(labels), amb);
}

/// One period of the Kagome lattice: cells gamma in {0..L-1}^2, three vertices
/// per cell at offsets {0, w1, -w2}, edges exactly where |y-x| = 1.
struct KagomePatch {
    Graph graph;
    std::vector<std::pair<long, long>> cells;         // gamma per cell index
    std::vector<std::array<int, 3>> cell_vertices;    // offsets 0, w1, -w2
    std::vector<std::array<int, 6>> hexagons;         // vertex rings, cyclic order
    std::vector<std::pair<long, long>> hexagon_centers;  // z0 = (2a+1)w1 + (2b+1)w2 as (a, b)

    /// Hexagons whose six ring vertices all have full patch degree 4.
    std::vector<int> interior_hexagons() const {
        std::vector<int> out;
        for (std::size_t h = 0; h < hexagons.size(); ++h) {
            bool interior = true;
            for (int v : hexagons[h])
                if (graph.degree(v) != 4) interior = false;
            if (interior) out.push_back(static_cast<int>(h));
        }
        return out;
    }
};

namespace detail {

inline PlanePoint kagome_w1() { return {QuadExt(rat(1)), QuadExt(rat(0))}; }
inline PlanePoint kagome_w2() { return {QuadExt(rat(1, 2)), QuadExt(rat(0), rat(1, 2))}; }

inline PlanePoint kagome_vertex_position(long g1, long g2, int offset) {
    PlanePoint w1 = kagome_w1(), w2 = kagome_w2();
    PlanePoint base{QuadExt(rat(2 * g1) + rat(g2)), QuadExt(rat(0), rat(g2))};
    // base = 2*g1*w1 + 2*g2*w2
    switch (offset) {
        case 0: return base;
        case 1: return base + w1;
        case 2: return base - w2;
        default: throw std::invalid_argument("kagome offset");
    }
}

// the six sixth roots of unity, e^{k pi i/3}
inline std::array<PlanePoint, 6> unit_hexagon_ring() {
    QuadExt half(rat(1, 2)), shalf(rat(0), rat(1, 2));
    return {PlanePoint{QuadExt(rat(1)), QuadExt(rat(0))},
            PlanePoint{half, shalf},
            PlanePoint{-half, shalf},
            PlanePoint{QuadExt(rat(-1)), QuadExt(rat(0))},
            PlanePoint{-half, -shalf},
            PlanePoint{half, -shalf}};
}

}  // namespace detail

inline KagomePatch kagome_patch(int L) {
    if (L < 1) throw std::invalid_argument("kagome_patch: L must be >= 1");
    const int n = 3 * L * L;
    std::vector<PlanePoint> coords;
    std::vector<LatticeLabel> labels;
    std::vector<std::pair<long, long>> cells;
    std::vector<std::array<int, 3>> cell_vertices;
    std::map<PlanePoint, int> index_of;
    coords.reserve(static_cast<std::size_t>(n));
    for (long g1 = 0; g1 < L; ++g1) {
        for (long g2 = 0; g2 < L; ++g2) {
            cells.emplace_back(g1, g2);
            std::array<int, 3> tri{};
            for (int off = 0; off < 3; ++off) {
                PlanePoint p = detail::kagome_vertex_position(g1, g2, off);
                int id = static_cast<int>(coords.size());
                coords.push_back(p);
                labels.push_back({g1, g2, off});
                index_of[p] = id;
                tri[static_cast<std::size_t>(off)] = id;
            }
            cell_vertices.push_back(tri);
        }
    }

    const QuadExt one(rat(1));
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (squared_distance(coords[static_cast<std::size_t>(i)], coords[static_cast<std::size_t>(j)]) == one)
                edges.emplace_back(i, j);

    Graph graph(n, edges, coords, labels, std::vector<int>(static_cast<std::size_t>(n), 4));

    // hexagon rings around candidate centers (2a+1)w1 + (2b+1)w2
    std::vector<std::array<int, 6>> hexagons;
    std::vector<std::pair<long, long>> hex_centers;
    auto ring = detail::unit_hexagon_ring();
    PlanePoint w1 = detail::kagome_w1(), w2 = detail::kagome_w2();
    for (long a = -1; a <= L; ++a) {
        for (long b = -1; b <= L; ++b) {
            PlanePoint z0{QuadExt(rat(2 * a + 1)), QuadExt(rat(0))};
            z0 = z0 + PlanePoint{w2.x * QuadExt(rat(2 * b + 1)), w2.y * QuadExt(rat(2 * b + 1))};
            std::array<int, 6> hex{};
            bool complete = true;
            for (int k = 0; k < 6 && complete; ++k) {
                auto it = index_of.find(z0 + ring[static_cast<std::size_t>(k)]);
                if (it == index_of.end())
                    complete = false;
                else
                    hex[static_cast<std::size_t>(k)] = it->second;
            }
            if (complete) {
                hexagons.push_back(hex);
                hex_centers.emplace_back(a, b);
            }
        }
    }
    return {std::move(graph), std::move(cells), std::move(cell_vertices), std::move(hexagons), std::move(hex_centers)};
}

/// Planar tessellation patch with its face list.  Faces on the rim are kept
/// but only interior-marked vertices/faces enter curvature predicates.
struct Tessellation {
    Graph graph;
    std::vector<std::vector<int>> faces;  // vertex cycles
    std::vector<int> face_sides;
    std::vector<bool> vertex_interior;
    std::vector<bool> face_interior;
};

enum class TessellationKind { square, triangular, hexagonal, kagome };

inline TessellationKind tessellation_kind_from_string(const std::string& s) {
    if (s == "square") return TessellationKind::square;
    if (s == "triangular") return TessellationKind::triangular;
    if (s == "hexagonal") return TessellationKind::hexagonal;
    if (s == "kagome") return TessellationKind::kagome;
    throw std::invalid_argument("unknown tessellation kind: " + s);
}

namespace detail {

// interiority: full ambient degree, and faces+edges alternate fully around v
inline void mark_interior(Tessellation& t) {
    int n = t.graph.vertex_count();
    std::vector<int> face_count(static_cast<std::size_t>(n), 0);
    for (const auto& f : t.faces)
        for (int v : f) ++face_count[static_cast<std::size_t>(v)];
    t.vertex_interior.assign(static_cast<std::size_t>(n), false);
    for (int v = 0; v < n; ++v)
        t.vertex_interior[static_cast<std::size_t>(v)] =
            t.graph.degree(v) == t.graph.ambient_degree(v) &&
            face_count[static_cast<std::size_t>(v)] == t.graph.degree(v);
    t.face_interior.assign(t.faces.size(), false);
    for (std::size_t f = 0; f < t.faces.size(); ++f) {
        bool ok = true;
        for (int v : t.faces[f])
            if (!t.vertex_interior[static_cast<std::size_t>(v)]) ok = false;
        t.face_interior[f] = ok;
    }
}

// triangular-lattice coordinates a*(1,0) + b*(1/2, sqrt3/2) on {0..L}^2
inline PlanePoint tri_position(long a, long b) {
    return {QuadExt(rat(a) + rat(b, 2)), QuadExt(rat(0), rat(b, 2))};
}

inline Tessellation square_tessellation(int L) {
    Graph g = zd_box(2, L + 1);
    std::vector<std::vector<int>> faces;
    for (int x = 0; x < L; ++x)
        for (int y = 0; y < L; ++y)
            faces.push_back({box_index({x, y}, 2, L + 1), box_index({x + 1, y}, 2, L + 1),
                             box_index({x + 1, y + 1}, 2, L + 1), box_index({x, y + 1}, 2, L + 1)});
    Tessellation t{std::move(g), std::move(faces), {}, {}, {}};
    t.face_sides.assign(t.faces.size(), 4);
    mark_interior(t);
    return t;
}

inline Tessellation triangular_tessellation(int L) {
    int side = L + 1;
    auto id = [side](long a, long b) { return static_cast<int>(a * side + b); };
    std::vector<PlanePoint> coords;
    std::vector<LatticeLabel> labels;
    for (long a = 0; a < side; ++a)
        for (long b = 0; b < side; ++b) {
            coords.push_back(tri_position(a, b));
            labels.push_back({a, b, 0});
        }
    int n = side * side;
    std::vector<std::pair<int, int>> edges;
    const QuadExt one(rat(1));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (squared_distance(coords[static_cast<std::size_t>(i)], coords[static_cast<std::size_t>(j)]) == one)
                edges.emplace_back(i, j);
    Graph g(n, edges, coords, labels, std::vector<int>(static_cast<std::size_t>(n), 6));
    std::vector<std::vector<int>> faces;
    for (long a = 0; a < L; ++a)
        for (long b = 0; b < L; ++b) {
            faces.push_back({id(a, b), id(a + 1, b), id(a, b + 1)});
            faces.push_back({id(a + 1, b), id(a + 1, b + 1), id(a, b + 1)});
        }
    Tessellation t{std::move(g), std::move(faces), {}, {}, {}};
    t.face_sides.assign(t.faces.size(), 3);
    mark_interior(t);
    return t;
}

inline Tessellation hexagonal_tessellation(int L) {
    // honeycomb = triangular lattice minus the (a - b) % 3 == 0 sublattice;
    // faces are the hexagons around removed interior sites
    int side = 3 * L + 2;
    auto cls = [](long a, long b) { return ((a - b) % 3 + 3) % 3; };
    std::map<std::pair<long, long>, int> keep;
    std::vector<PlanePoint> coords;
    std::vector<LatticeLabel> labels;
    for (long a = 0; a < side; ++a)
        for (long b = 0; b < side; ++b) {
            if (cls(a, b) == 0) continue;
            keep[{a, b}] = static_cast<int>(coords.size());
            coords.push_back(tri_position(a, b));
            labels.push_back({a, b, 0});
        }
    int n = static_cast<int>(coords.size());
    std::vector<std::pair<int, int>> edges;
    const QuadExt one(rat(1));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (squared_distance(coords[static_cast<std::size_t>(i)], coords[static_cast<std::size_t>(j)]) == one)
                edges.emplace_back(i, j);
    Graph g(n, edges, coords, labels, std::vector<int>(static_cast<std::size_t>(n), 3));
    // ring around removed site (a,b): its six triangular-lattice neighbours
    const std::array<std::pair<long, long>, 6> ring{{{1, 0}, {0, 1}, {-1, 1}, {-1, 0}, {0, -1}, {1, -1}}};
    std::vector<std::vector<int>> faces;
    for (long a = 1; a + 1 < side; ++a)
        for (long b = 1; b + 1 < side; ++b) {
            if (cls(a, b) != 0) continue;
            std::vector<int> cycle;
            bool complete = true;
            for (auto [da, db] : ring) {
                auto it = keep.find({a + da, b + db});
                if (it == keep.end()) {
                    complete = false;
                    break;
                }
                cycle.push_back(it->second);
            }
            if (complete) faces.push_back(std::move(cycle));
        }
    Tessellation t{std::move(g), std::move(faces), {}, {}, {}};
    t.face_sides.assign(t.faces.size(), 6);
    mark_interior(t);
    return t;
}

inline Tessellation kagome_tessellation(int L) {
    KagomePatch patch = kagome_patch(L);
    std::vector<std::vector<int>> faces;
    std::vector<int> sides;
    // triangles are exactly the 3-cliques
    int n = patch.graph.vertex_count();
    for (int u = 0; u < n; ++u)
        for (int v : patch.graph.neighbors(u)) {
            if (v <= u) continue;
            for (int w : patch.graph.neighbors(v)) {
                if (w <= v) continue;
                if (patch.graph.adjacent(u, w)) {
                    faces.push_back({u, v, w});
                    sides.push_back(3);
                }
            }
        }
    for (const auto& hex : patch.hexagons) {
        faces.emplace_back(hex.begin(), hex.end());
        sides.push_back(6);
    }
    Tessellation t{std::move(patch.graph), std::move(faces), std::move(sides), {}, {}};
    mark_interior(t);
    return t;
}

}  // namespace detail

inline Tessellation tessellation_patch(TessellationKind kind, int L) {
    if (L < 1) throw std::invalid_argument("tessellation_patch: L must be >= 1");
    switch (kind) {
        case TessellationKind::square: return detail::square_tessellation(L);
        case TessellationKind::triangular: return detail::triangular_tessellation(L);
        case TessellationKind::hexagonal: return detail::hexagonal_tessellation(L);
        case TessellationKind::kagome: return detail::kagome_tessellation(L);
    }
    throw std::invalid_argument("tessellation_patch: unknown kind");
}

}  // namespace latspec
