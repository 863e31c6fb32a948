#pragma once

#include "latspec/lattice.hpp"
#include "latspec/operators.hpp"
#include "latspec/parallel.hpp"
#include "latspec/rng.hpp"

#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

namespace latspec {

/// One site-percolation configuration on the box {0..L-1}^d, reproducible
/// from (L, d, p, seed).
struct PercolationSample {
    int L = 0, d = 0;
    double p = 0.0;
    std::uint64_t seed = 0;
    VertexSet active;
};

inline PercolationSample sample_sites(int L, int d, double p, std::uint64_t seed) {
    if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("sample_sites: p must be in (0,1)");
    long n = box_site_count(d, L);
    if (n > 1000000) throw std::invalid_argument("sample_sites: box too large");
    PercolationSample s{L, d, p, seed, VertexSet(static_cast<int>(n))};
    for (int site = 0; site < static_cast<int>(n); ++site)
        if (rng::bernoulli(seed, static_cast<std::uint64_t>(site), p)) s.active.set(site);
    return s;
}

struct PercolationSpectra {
    std::vector<std::vector<double>> clusters;  // sorted eigenvalues per cluster
    long active_count = 0;
};

/// Per-cluster adjacency spectra; an optional potential seed adds the i.i.d.
/// uniform[0,1] diagonal keyed by the original box site index.
inline PercolationSpectra percolation_cluster_spectra(const PercolationSample& s,
                                                      std::optional<std::uint64_t> potential_seed = std::nullopt) {
    Graph box = zd_box(s.d, s.L);
    InducedSubgraph act = induced_subgraph(box, s.active);
    Components comps = connected_components(act.graph);
    PercolationSpectra out;
    out.active_count = act.graph.vertex_count();
    out.clusters.reserve(comps.parts.size());
    for (const auto& part : comps.parts) {
        VertexSet mask(act.graph.vertex_count());
        for (int v : part) mask.set(v);
        InducedSubgraph cluster = induced_subgraph(act.graph, mask);
        SymmetricMatrix a = adjacency_sym(cluster.graph);
        if (potential_seed) {
            for (int v = 0; v < cluster.graph.vertex_count(); ++v) {
                int box_site = act.to_parent[static_cast<std::size_t>(cluster.to_parent[static_cast<std::size_t>(v)])];
                a.at(v, v) += rng::uniform01(*potential_seed ^ rng::kStreamPotential, static_cast<std::uint64_t>(box_site));
            }
        }
        out.clusters.push_back(sym_eigenvalues(a).eigenvalues);
    }
    return out;
}

inline CountingFunction counting_from_spectra(const PercolationSpectra& spectra, int L, int d) {
    std::vector<double> all;
    for (const auto& c : spectra.clusters) all.insert(all.end(), c.begin(), c.end());
    return CountingFunction(std::move(all), rat(box_site_count(d, L)));
}

/// N_omega^L: per-cluster adjacency spectra, normalized by |Lambda_L| = L^d
/// (all sites, active or not).
inline CountingFunction percolation_counting(const PercolationSample& s) {
    return counting_from_spectra(percolation_cluster_spectra(s), s.L, s.d);
}

/// Adjacency plus i.i.d. uniform[0,1] site potential on each cluster.
inline CountingFunction randomized_potential_counting(const PercolationSample& s, std::uint64_t potential_seed) {
    return counting_from_spectra(percolation_cluster_spectra(s, potential_seed), s.L, s.d);
}

struct CoincidenceReport {
    long max_multiplicity_within_cluster = 1;  // max eigenvalue multiplicity inside any single cluster
    long cross_cluster_coincidences = 0;       // pairs from different clusters within tol
};

inline CoincidenceReport spectral_coincidences(const PercolationSpectra& spectra, double tol) {
    CoincidenceReport rep;
    rep.max_multiplicity_within_cluster = 0;
    std::vector<std::pair<double, int>> merged;
    for (std::size_t c = 0; c < spectra.clusters.size(); ++c) {
        const auto& eigs = spectra.clusters[c];
        long run = 0;
        for (std::size_t i = 0; i < eigs.size(); ++i) {
            run = (i == 0 || eigs[i] - eigs[i - 1] > tol) ? 1 : run + 1;
            rep.max_multiplicity_within_cluster = std::max(rep.max_multiplicity_within_cluster, run);
            merged.emplace_back(eigs[i], static_cast<int>(c));
        }
    }
    std::sort(merged.begin(), merged.end());
    for (std::size_t i = 0; i + 1 < merged.size(); ++i)
        for (std::size_t j = i + 1; j < merged.size() && merged[j].first - merged[i].first <= tol; ++j)
            if (merged[i].second != merged[j].second) ++rep.cross_cluster_coincidences;
    return rep;
}

// ---- lattice animals (free polyominoes, d = 2) ----

using AnimalCells = std::vector<std::pair<int, int>>;

namespace detail {

inline AnimalCells canonical_animal(AnimalCells cells) {
    AnimalCells best;
    for (int t = 0; t < 8; ++t) {
        AnimalCells img;
        img.reserve(cells.size());
        for (auto [x, y] : cells) {
            int a = x, b = y;
            if (t & 4) std::swap(a, b);
            if (t & 1) a = -a;
            if (t & 2) b = -b;
            img.emplace_back(a, b);
        }
        int mx = img[0].first, my = img[0].second;
        for (auto [a, b] : img) {
            mx = std::min(mx, a);
            my = std::min(my, b);
        }
        for (auto& [a, b] : img) {
            a -= mx;
            b -= my;
        }
        std::sort(img.begin(), img.end());
        if (best.empty() || img < best) best = std::move(img);
    }
    return best;
}

}  // namespace detail

/// Finite connected cell set in Z^2, stored in canonical form: translated to
/// the origin and lexicographically minimal over the 8 lattice symmetries.
struct LatticeAnimal {
    AnimalCells cells;
    int size() const { return static_cast<int>(cells.size()); }

    static LatticeAnimal from_cells(AnimalCells raw) { return {detail::canonical_animal(std::move(raw))}; }

    SymmetricMatrix adjacency() const {
        int n = size();
        SymmetricMatrix a(n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < i; ++j) {
                int dx = std::abs(cells[static_cast<std::size_t>(i)].first - cells[static_cast<std::size_t>(j)].first);
                int dy = std::abs(cells[static_cast<std::size_t>(i)].second - cells[static_cast<std::size_t>(j)].second);
                if (dx + dy == 1) a.at(i, j) = 1.0;
            }
        return a;
    }

    friend bool operator<(const LatticeAnimal& x, const LatticeAnimal& y) { return x.cells < y.cells; }
    friend bool operator==(const LatticeAnimal& x, const LatticeAnimal& y) { return x.cells == y.cells; }
};

/// All free polyominoes of sizes 1..max_size (growth with canonical dedup).
inline std::vector<LatticeAnimal> enumerate_lattice_animals(int max_size) {
    if (max_size < 1 || max_size > 8) throw std::invalid_argument("enumerate_lattice_animals: size must be in 1..8");
    std::vector<std::set<LatticeAnimal>> by_size(static_cast<std::size_t>(max_size) + 1);
    by_size[1].insert(LatticeAnimal::from_cells({{0, 0}}));
    for (int s = 2; s <= max_size; ++s) {
        for (const LatticeAnimal& base : by_size[static_cast<std::size_t>(s - 1)]) {
            std::set<std::pair<int, int>> occupied(base.cells.begin(), base.cells.end());
            for (auto [x, y] : base.cells) {
                constexpr std::array<std::pair<int, int>, 4> steps{{{1, 0}, {-1, 0}, {0, 1}, {0, -1}}};
                for (auto [dx, dy] : steps) {
                    std::pair<int, int> cand{x + dx, y + dy};
                    if (occupied.count(cand)) continue;
                    AnimalCells grown = base.cells;
                    grown.push_back(cand);
                    by_size[static_cast<std::size_t>(s)].insert(LatticeAnimal::from_cells(std::move(grown)));
                }
            }
        }
    }
    std::vector<LatticeAnimal> out;
    for (int s = 1; s <= max_size; ++s) out.insert(out.end(), by_size[static_cast<std::size_t>(s)].begin(), by_size[static_cast<std::size_t>(s)].end());
    return out;
}

/// Exact characteristic polynomial (coefficients of lambda^0..lambda^n) for
/// animals of size <= 3.
inline std::vector<long> small_animal_charpoly(const LatticeAnimal& a) {
    int n = a.size();
    if (n > 3) throw std::invalid_argument("small_animal_charpoly: size must be <= 3");
    SymmetricMatrix m = a.adjacency();
    auto e = [&m](int i, int j) { return static_cast<long>(m.get(i, j)); };
    if (n == 1) return {0, 1};  // lambda
    if (n == 2) {
        long det = e(0, 0) * e(1, 1) - e(0, 1) * e(1, 0);
        long tr = e(0, 0) + e(1, 1);
        return {det, -tr, 1};
    }
    long tr = e(0, 0) + e(1, 1) + e(2, 2);
    long c2 = e(0, 0) * e(1, 1) - e(0, 1) * e(1, 0) + e(0, 0) * e(2, 2) - e(0, 2) * e(2, 0) +
              e(1, 1) * e(2, 2) - e(1, 2) * e(2, 1);
    long det = e(0, 0) * (e(1, 1) * e(2, 2) - e(1, 2) * e(2, 1)) - e(0, 1) * (e(1, 0) * e(2, 2) - e(1, 2) * e(2, 0)) +
               e(0, 2) * (e(1, 0) * e(2, 1) - e(1, 1) * e(2, 0));
    return {-det, c2, -tr, 1};
}

/// Truncation of the IDS discontinuity set: adjacency spectra of all animals,
/// grouped by size.
struct DiscontinuityCatalog {
    int max_size = 0;
    std::map<int, std::vector<double>> per_size;                 // deduped at 1e-9, sorted
    std::map<int, std::vector<std::vector<long>>> small_charpolys;  // sizes <= 3

    /// union over sizes <= s
    std::vector<double> cumulative(int s) const {
        std::vector<double> all;
        for (const auto& [size, eigs] : per_size)
            if (size <= s) all.insert(all.end(), eigs.begin(), eigs.end());
        std::sort(all.begin(), all.end());
        std::vector<double> out;
        for (double v : all)
            if (out.empty() || v - out.back() > 1e-9) out.push_back(v);
        return out;
    }

    std::vector<double> all_energies() const { return cumulative(max_size); }
};

inline DiscontinuityCatalog discontinuity_catalog(int max_size) {
    DiscontinuityCatalog cat;
    cat.max_size = max_size;
    for (const LatticeAnimal& a : enumerate_lattice_animals(max_size)) {
        auto eigs = sym_eigenvalues(a.adjacency()).eigenvalues;
        auto& bucket = cat.per_size[a.size()];
        bucket.insert(bucket.end(), eigs.begin(), eigs.end());
        if (a.size() <= 3) cat.small_charpolys[a.size()].push_back(small_animal_charpoly(a));
    }
    for (auto& [size, eigs] : cat.per_size) {
        std::sort(eigs.begin(), eigs.end());
        std::vector<double> dedup;
        for (double v : eigs)
            if (dedup.empty() || v - dedup.back() > 1e-9) dedup.push_back(v);
        eigs = std::move(dedup);
    }
    return cat;
}

// ---- averaged finite-volume IDS ----

struct JumpEstimate {
    double energy = 0.0;
    double mean = 0.0;     // average cluster-mode jump over trials
    double stddev = 0.0;   // sample standard deviation over trials
    double sem = 0.0;      // stddev / sqrt(trials)
};

struct EmpiricalIds {
    int L = 0;
    double p = 0.0;
    int trials = 0;
    std::uint64_t seed = 0;
    int catalog_size = 0;
    std::vector<double> grid;
    std::vector<double> mean_counting;  // averaged N at each grid energy
    std::vector<JumpEstimate> jumps;    // at the catalog energies
};

/// Monte Carlo average of N_omega^L over independent samples (d = 2); jump
/// estimates use cluster tolerance 1e-6 at every catalog energy.  Per-trial
/// seeds are seed xor trial index; aggregation is by trial index, so the
/// result is independent of the worker count.
inline EmpiricalIds empirical_ids(int L, double p, int trials, std::uint64_t seed, const std::vector<double>& grid,
                                  int catalog_size, int jobs = 1) {
    if (trials < 1) throw std::invalid_argument("empirical_ids: trials must be >= 1");
    EmpiricalIds out;
    out.L = L;
    out.p = p;
    out.trials = trials;
    out.seed = seed;
    out.catalog_size = catalog_size;
    out.grid = grid;
    std::vector<double> catalog = discontinuity_catalog(catalog_size).all_energies();

    std::vector<std::vector<double>> trial_grid(static_cast<std::size_t>(trials));
    std::vector<std::vector<double>> trial_jump(static_cast<std::size_t>(trials));
    parallel_for(trials, jobs, [&](int t) {
        PercolationSample s = sample_sites(L, 2, p, seed ^ static_cast<std::uint64_t>(t));
        CountingFunction n = percolation_counting(s);
        auto& g = trial_grid[static_cast<std::size_t>(t)];
        g.reserve(grid.size());
        for (double e : grid) g.push_back(n.value(e));
        auto& j = trial_jump[static_cast<std::size_t>(t)];
        j.reserve(catalog.size());
        for (double e : catalog) j.push_back(n.jump_cluster(e, 1e-6));
    });

    out.mean_counting.assign(grid.size(), 0.0);
    for (const auto& g : trial_grid)
        for (std::size_t i = 0; i < g.size(); ++i) out.mean_counting[i] += g[i] / trials;
    for (std::size_t k = 0; k < catalog.size(); ++k) {
        JumpEstimate est;
        est.energy = catalog[k];
        for (const auto& j : trial_jump) est.mean += j[k] / trials;
        if (trials > 1) {
            double ss = 0.0;
            for (const auto& j : trial_jump) ss += (j[k] - est.mean) * (j[k] - est.mean);
            est.stddev = std::sqrt(ss / (trials - 1));
            est.sem = est.stddev / std::sqrt(static_cast<double>(trials));
        }
        out.jumps.push_back(est);
    }
    return out;
}

}  // namespace latspec
