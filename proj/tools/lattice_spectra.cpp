// lattice-spectra: experiment runner for the spectral-graph laboratory.
//
// Subcommands: gen, ids, kagome, perc, ucp, curvature, qgraph.
// All randomized output is a pure function of (config, seed, version); CSV
// goes to --out, the JSON report to stdout (or --json <path>).
// Exit codes: 0 ok, 1 computation failed, 2 bad usage.

#include <CLI11.hpp>
#include <json.hpp>

#include "latspec/curvature.hpp"
#include "latspec/io.hpp"
#include "latspec/kagome.hpp"
#include "latspec/lattice.hpp"
#include "latspec/percolation.hpp"
#include "latspec/quantum_graph.hpp"
#include "latspec/rng.hpp"

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

using nlohmann::json;
using namespace latspec;

struct GridSpec {
    double min = -4.0, max = 4.0, step = 0.01;
};

GridSpec parse_grid(const std::string& s) {
    GridSpec g;
    if (std::sscanf(s.c_str(), "%lf:%lf:%lf", &g.min, &g.max, &g.step) != 3 || g.step <= 0 || g.max < g.min)
        throw CLI::ValidationError("--grid", "expected min:max:step with step > 0");
    return g;
}

Rat parse_rational(const std::string& s) {
    long num = 0, den = 1;
    if (std::sscanf(s.c_str(), "%ld/%ld", &num, &den) == 2) {
        if (den == 0) throw CLI::ValidationError("rational", "zero denominator");
        return rat(num, den);
    }
    if (std::sscanf(s.c_str(), "%ld", &num) == 1) return rat(num);
    throw CLI::ValidationError("rational", "expected integer or num/den: " + s);
}

std::vector<double> grid_points(const GridSpec& g) {
    std::vector<double> out;
    for (double e = g.min; e <= g.max + 1e-12; e += g.step) out.push_back(e);
    return out;
}

json config_echo(const json& cfg) {
    json j;
    j["version"] = kLibraryVersion;
    j["rng"] = rng::kVersion;
    j["config"] = cfg;
    return j;
}

void emit_report(const json& report, const std::string& json_path) {
    std::string text = report.dump(2) + "\n";
    if (json_path.empty())
        std::cout << text;
    else
        atomic_write_file(json_path, text);
}

std::vector<Rat> seeded_potential(int n, std::uint64_t seed) {
    std::vector<Rat> v(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = rng::small_rational(seed, static_cast<std::uint64_t>(i));
    return v;
}

// ---- gen ----

int run_gen(const std::string& kind, int d, int L, const std::string& out, const json& cfg) {
    json j = config_echo(cfg);
    if (kind == "zd") {
        j["graph"] = graph_to_json(zd_box(d, L));
    } else if (kind == "kagome") {
        KagomePatch patch = kagome_patch(L);
        j["graph"] = graph_to_json(patch.graph);
        json cells = json::array();
        for (std::size_t c = 0; c < patch.cells.size(); ++c)
            cells.push_back({{"gamma", {patch.cells[c].first, patch.cells[c].second}},
                             {"vertices", patch.cell_vertices[c]}});
        j["cells"] = std::move(cells);
        json hexes = json::array();
        for (std::size_t h = 0; h < patch.hexagons.size(); ++h)
            hexes.push_back({{"vertices", patch.hexagons[h]},
                             {"center", {patch.hexagon_centers[h].first, patch.hexagon_centers[h].second}}});
        j["hexagons"] = std::move(hexes);
    } else {
        Tessellation t = tessellation_patch(tessellation_kind_from_string(kind), L);
        j["graph"] = graph_to_json(t.graph);
        json faces = json::array();
        for (std::size_t f = 0; f < t.faces.size(); ++f)
            faces.push_back({{"vertices", t.faces[f]}, {"sides", t.face_sides[f]}, {"interior", (bool)t.face_interior[f]}});
        j["faces"] = std::move(faces);
    }
    if (out.empty())
        std::cout << j.dump(2) << "\n";
    else
        atomic_write_file(out, j.dump(2) + "\n");
    return 0;
}

// ---- ids ----

int run_ids(const std::string& kind, int d, int L, const std::string& op, std::uint64_t seed, const GridSpec& grid,
            const std::string& out, const std::string& json_path, const json& cfg) {
    Graph g = kind == "kagome" ? kagome_patch(L).graph : kind == "zd" ? zd_box(d, L)
                                                                      : tessellation_patch(tessellation_kind_from_string(kind), L).graph;
    OperatorSpec spec;
    if (op == "adjacency")
        spec.kind = OperatorKind::adjacency;
    else if (op == "laplacian")
        spec.kind = OperatorKind::combinatorial_laplacian;
    else if (op == "normalized")
        spec.kind = OperatorKind::normalized_laplacian;
    else if (op == "schrodinger") {
        spec.kind = OperatorKind::schrodinger;
        spec.potential = seeded_potential(g.vertex_count(), seed);
    } else
        throw CLI::ValidationError("--operator", "unknown operator: " + op);
    RationalMatrix m = build_operator(g, spec);
    Spectrum s = sym_eigenvalues(SymmetricMatrix::from_rational(m));
    CountingFunction cf(s.eigenvalues, rat(g.vertex_count()));
    if (!out.empty()) atomic_write_file(out, counting_function_csv(cf, grid.min, grid.max, grid.step));
    json rep = config_echo(cfg);
    rep["vertices"] = g.vertex_count();
    rep["min_eigenvalue"] = s.eigenvalues.front();
    rep["max_eigenvalue"] = s.eigenvalues.back();
    emit_report(rep, json_path);
    return 0;
}

// ---- kagome ----

int run_kagome(int L, const std::string& boundary, const GridSpec& grid, const std::string& out,
               const std::string& json_path, const json& cfg) {
    KagomeBoundary b = boundary == "dirichlet" ? KagomeBoundary::dirichlet_delete : KagomeBoundary::simple;
    KagomeCounting kc = kagome_counting(L, b);
    if (!out.empty()) atomic_write_file(out, counting_function_csv(kc.counting, grid.min, grid.max, grid.step));
    json rep = config_echo(cfg);
    rep["jump_at_3_2_exact"] = rat_to_json(kc.jump_3_2);
    rep["multiplicity_3_2"] = kc.multiplicity_3_2;
    rep["interior_hexagons"] = kc.interior_hexagon_count;
    rep["contained_hexagons"] = kc.contained_hexagon_count;
    rep["max_eigenvalue"] = kc.max_eigenvalue;
    rep["spectral_top_certificate"] = kc.top_certificate;
    rep["normalization"] = 3L * L * L;
    emit_report(rep, json_path);
    return 0;
}

// ---- perc ----

int run_perc(int L, double p, int trials, std::uint64_t seed, const GridSpec& grid, int catalog_size, int jobs,
             const std::string& out, const std::string& json_path, const json& cfg) {
    EmpiricalIds ids = empirical_ids(L, p, trials, seed, grid_points(grid), catalog_size, jobs);
    if (!out.empty()) {
        std::string csv = "E,N\n";
        double prev = -1.0;
        for (std::size_t i = 0; i < ids.grid.size(); ++i) {
            if (ids.mean_counting[i] < prev) throw std::logic_error("perc: counting function not monotone");
            prev = ids.mean_counting[i];
            csv += format_double(ids.grid[i]) + "," + format_double(ids.mean_counting[i]) + "\n";
        }
        atomic_write_file(out, csv);
    }
    json rep = config_echo(cfg);
    rep["boxes"] = "cornered";
    json jumps = json::array();
    for (const auto& j : ids.jumps)
        jumps.push_back({{"energy", j.energy}, {"mean", j.mean}, {"stddev", j.stddev}, {"sem", j.sem}});
    rep["jumps"] = std::move(jumps);
    emit_report(rep, json_path);
    return 0;
}

// ---- ucp ----

int run_ucp(const std::string& geometry, const std::string& zero, const std::vector<std::string>& omit,
            const std::string& energy, const std::string& potential, std::uint64_t seed, bool with_basis,
            const std::string& json_path, const json& cfg) {
    ContinuationProblem p;
    int w = 0, h = 0;
    if (std::sscanf(geometry.c_str(), "cylinder:%dx%d", &w, &h) == 2)
        p.geometry = UcpGeometry::cylinder(w, h);
    else if (std::sscanf(geometry.c_str(), "box:%dx%d", &w, &h) == 2)
        p.geometry = UcpGeometry::box(w, h);
    else
        throw CLI::ValidationError("--geometry", "expected cylinder:WxH or box:dxL");

    int a = 0, b = 0;
    long n1 = 0, n2 = 0, alpha = 0;
    if (std::sscanf(zero.c_str(), "slab:%d:%d", &a, &b) == 2) {
        if (!p.geometry.is_cylinder()) throw CLI::ValidationError("--zero", "slab zero sets need the cylinder geometry");
        p.zero_set = cylinder_slab(p.geometry, a, b);
    } else if (std::sscanf(zero.c_str(), "halfspace:%ld,%ld:%ld", &n1, &n2, &alpha) == 3) {
        if (p.geometry.is_cylinder()) throw CLI::ValidationError("--zero", "half-space zero sets need the box geometry");
        p.zero_set = box_halfspace(p.geometry, n1, n2, alpha);
    } else {
        throw CLI::ValidationError("--zero", "expected slab:start:width or halfspace:n1,n2:alpha");
    }
    for (const std::string& o : omit) {
        int x = 0, y = 0;
        if (std::sscanf(o.c_str(), "%d,%d", &x, &y) != 2) throw CLI::ValidationError("--omit", "expected x,y");
        int site = p.geometry.is_cylinder() ? p.geometry.cylinder_site(x, y)
                                            : box_index({x, y}, 2, p.geometry.box_side());
        p.zero_set.set(site, false);
    }
    p.equation_set = p.geometry.full_neighborhood_sites();
    p.energy = parse_rational(energy);
    if (potential == "rand")
        p.potential = seeded_potential(p.geometry.site_count(), seed);
    else if (potential != "zero")
        throw CLI::ValidationError("--potential", "expected zero or rand");

    SolutionSpace s = continuation_dimension(p);
    json rep = config_echo(cfg);
    rep["dimension"] = s.dimension;
    rep["degenerate"] = s.degenerate;
    rep["sites"] = p.geometry.site_count();
    rep["zero_sites"] = p.zero_set.count();
    rep["equation_sites"] = p.equation_set.count();
    if (with_basis) {
        json basis = json::array();
        for (const auto& vec : s.basis) {
            json jv = json::array();
            for (const Rat& r : vec) jv.push_back(rat_to_json(r));
            basis.push_back(std::move(jv));
        }
        rep["basis"] = std::move(basis);
    }
    emit_report(rep, json_path);
    return 0;
}

// ---- curvature ----

int run_curvature(const std::string& kind, int L, const std::string& scan, int jobs, const std::string& json_path,
                  const json& cfg) {
    Tessellation t = tessellation_patch(tessellation_kind_from_string(kind), L);
    std::vector<Rat> energies;
    if (scan == "default") {
        std::vector<double> floats;
        OperatorSpec spec;
        spec.kind = OperatorKind::normalized_laplacian;
        floats = sym_eigenvalues(SymmetricMatrix::from_rational(build_operator(t.graph, spec))).eigenvalues;
        energies = candidate_energies(rat(0), rat(2), floats);
    } else if (scan != "none") {
        throw CLI::ValidationError("--scan-energies", "expected default or none");
    }
    CurvatureSupportScan res = curvature_vs_support_scan(t, energies, jobs);
    json rep = config_echo(cfg);
    rep["kind"] = kind;
    rep["nonpositive_corner_curvature"] = res.curvature.nonpositive;
    rep["max_corner_curvature"] = rat_to_json(res.curvature.max_curvature);
    rep["corners_scanned"] = res.curvature.scanned;
    rep["scan_region"] = "interior corners of the finite patch only";
    json positives = json::array();
    for (const Corner& c : res.curvature.positive_corners) positives.push_back({{"vertex", c.vertex}, {"face", c.face}});
    rep["positive_corners"] = std::move(positives);
    rep["scanned_energies"] = energies.size();
    json witnesses = json::array();
    for (const auto& entry : res.energies)
        if (entry.witness_dimension > 0)
            witnesses.push_back({{"energy", rat_to_json(entry.energy)}, {"dimension", entry.witness_dimension}});
    rep["finite_support_witnesses"] = std::move(witnesses);
    rep["witness_semantics"] = "no witness found on candidate set; not a proof of absence";
    emit_report(rep, json_path);
    return 0;
}

// ---- qgraph ----

int run_qgraph(int L, double emax, const std::string& out, const std::string& json_path, const json& cfg) {
    MetricIDS ids = metric_kagome_ids(L, emax);
    if (!out.empty()) {
        std::string csv = "E,N\n";
        double prev = -1.0;
        for (auto [e, v] : ids.samples) {
            if (v < prev) throw std::logic_error("qgraph: counting function not monotone");
            prev = v;
            csv += format_double(e) + "," + format_double(v) + "\n";
        }
        atomic_write_file(out, csv);
    }
    json rep = config_echo(cfg);
    rep["edge_count"] = ids.edge_count;
    rep["assembly"] = "correspondence-assembled";
    rep["multiplicity_transport"] = "each discrete eigenvalue contributes its multiplicity to every branch energy";
    rep["endpoint_convention"] = "lambda in {0,2} folded into dirichlet bookkeeping";
    json jumps = json::array();
    for (const auto& j : ids.jumps)
        jumps.push_back({{"energy", j.energy},
                         {"size_num", rat_to_json(j.size)["num"]},
                         {"size_den", rat_to_json(j.size)["den"]},
                         {"origin", j.origin == MetricJumpOrigin::dirichlet ? "dirichlet" : "vertex_spectrum"}});
    rep["jumps"] = std::move(jumps);
    emit_report(rep, json_path);
    return 0;
}

json collect_config(const CLI::App& app) {
    json cfg;
    for (const CLI::Option* opt : app.get_options()) {
        std::string name = opt->get_name();
        if (name.empty() || name == "--help") continue;
        if (name.rfind("--", 0) == 0) name = name.substr(2);
        if (opt->count() > 0 && !opt->results().empty()) cfg[name] = opt->results().front();
    }
    return cfg;
}

// The config file supplies defaults: any key not already present as a flag is
// appended to the argument list before parsing, so flags always win.
std::vector<std::string> inject_config_args(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    std::string config_path;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) config_path = args[i + 1];
        else if (args[i].rfind("--config=", 0) == 0) config_path = args[i].substr(9);
    }
    if (config_path.empty()) return args;
    std::ifstream f(config_path);
    if (!f) throw std::runtime_error("cannot read config file: " + config_path);
    json file_cfg;
    f >> file_cfg;
    for (const auto& [key, value] : file_cfg.items()) {
        std::string flag = "--" + key;
        bool present = false;
        for (const std::string& a : args)
            if (a == flag || a.rfind(flag + "=", 0) == 0) present = true;
        if (present) continue;
        args.push_back(flag);
        args.push_back(value.is_string() ? value.get<std::string>() : value.dump());
    }
    return args;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"lattice-spectra: discrete spectra, IDS jumps, unique continuation and curvature experiments"};
    app.require_subcommand(1);

    std::string config_path, out, json_path;
    std::uint64_t seed = 1;
    int jobs = 1;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "JSON config file; command line flags override it");
        sub->add_option("--out", out, "primary output file (CSV or JSON)");
        sub->add_option("--json", json_path, "write the JSON report here instead of stdout");
        sub->add_option("--seed", seed, "64-bit master seed");
        sub->add_option("--jobs", jobs, "worker threads for independent work units")->check(CLI::Range(1, 256));
    };

    std::string kind = "kagome", op = "normalized", boundary = "simple", geometry, zero, energy = "0",
                potential = "zero", scan = "default", grid_str = "-4:4:0.01";
    int d = 2, L = 4, trials = 1, catalog_size = 4;
    double p = 0.5, emax = 60.0;
    bool with_basis = false;
    std::vector<std::string> omit;

    CLI::App* gen = app.add_subcommand("gen", "emit a lattice patch as JSON");
    gen->add_option("--kind", kind, "zd | kagome | square | triangular | hexagonal");
    gen->add_option("--d", d, "dimension for zd");
    gen->add_option("--L", L, "side length");
    add_common(gen);

    CLI::App* ids = app.add_subcommand("ids", "counting function of a lattice operator");
    ids->add_option("--kind", kind, "zd | kagome | square | triangular | hexagonal");
    ids->add_option("--d", d, "dimension for zd");
    ids->add_option("--L", L, "side length");
    ids->add_option("--operator", op, "adjacency | laplacian | normalized | schrodinger");
    ids->add_option("--grid", grid_str, "energy grid min:max:step");
    add_common(ids);

    CLI::App* kag = app.add_subcommand("kagome", "Kagome patch counting function and exact 3/2 jump");
    kag->add_option("--L", L, "cells per side");
    kag->add_option("--boundary", boundary, "simple | dirichlet");
    kag->add_option("--grid", grid_str, "energy grid min:max:step");
    add_common(kag);

    CLI::App* perc = app.add_subcommand("perc", "site percolation IDS with jump estimates");
    perc->add_option("--L", L, "box side");
    perc->add_option("--p", p, "site probability in (0,1)");
    perc->add_option("--trials", trials, "independent samples");
    perc->add_option("--grid", grid_str, "energy grid min:max:step");
    perc->add_option("--catalog-size", catalog_size, "lattice-animal size for the jump catalog");
    add_common(perc);

    CLI::App* ucp = app.add_subcommand("ucp", "unique continuation dimension for a zero set");
    ucp->add_option("--geometry", geometry, "cylinder:WxH | box:dxL")->required();
    ucp->add_option("--zero", zero, "slab:start:width | halfspace:n1,n2:alpha")->required();
    ucp->add_option("--omit", omit, "x,y points removed from the zero set");
    ucp->add_option("--energy", energy, "exact rational energy (integer or num/den)");
    ucp->add_option("--potential", potential, "zero | rand");
    ucp->add_flag("--basis", with_basis, "include the exact solution basis in the report");
    add_common(ucp);

    CLI::App* curv = app.add_subcommand("curvature", "corner curvature and finite-support witnesses");
    curv->add_option("--kind", kind, "square | triangular | hexagonal | kagome");
    curv->add_option("--L", L, "patch side");
    curv->add_option("--scan-energies", scan, "default | none");
    add_common(curv);

    CLI::App* qg = app.add_subcommand("qgraph", "equilateral metric Kagome IDS");
    qg->add_option("--L", L, "cells per side");
    qg->add_option("--emax", emax, "energy cutoff");
    add_common(qg);

    std::vector<std::string> args;
    try {
        args = inject_config_args(argc, argv);
        std::vector<const char*> argv2{argv[0]};
        for (const std::string& a : args) argv2.push_back(a.c_str());
        app.parse(static_cast<int>(argv2.size()), argv2.data());
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        nlohmann::json err{{"error", e.what()}, {"exit", 2}};
        std::cerr << err.dump() << "\n";
        return 2;
    } catch (const std::exception& e) {
        nlohmann::json err{{"error", e.what()}, {"exit", 2}};
        std::cerr << err.dump() << "\n";
        return 2;
    }

    try {
        CLI::App* sub = app.get_subcommands().front();
        json cfg = collect_config(*sub);
        cfg["subcommand"] = sub->get_name();
        cfg["seed"] = seed;

        GridSpec grid = parse_grid(grid_str);
        if (sub == gen) return run_gen(kind, d, L, out, cfg);
        if (sub == ids) return run_ids(kind, d, L, op, seed, grid, out, json_path, cfg);
        if (sub == kag) return run_kagome(L, boundary, grid, out, json_path, cfg);
        if (sub == perc) return run_perc(L, p, trials, seed, grid, catalog_size, jobs, out, json_path, cfg);
        if (sub == ucp) return run_ucp(geometry, zero, omit, energy, potential, seed, with_basis, json_path, cfg);
        if (sub == curv) return run_curvature(kind, L, scan, jobs, json_path, cfg);
        if (sub == qg) return run_qgraph(L, emax, out, json_path, cfg);
        nlohmann::json err{{"error", "unknown subcommand"}, {"exit", 2}};
        std::cerr << err.dump() << "\n";
        return 2;
    } catch (const CLI::ValidationError& e) {
        nlohmann::json err{{"error", e.what()}, {"exit", 2}};
        std::cerr << err.dump() << "\n";
        return 2;
    } catch (const std::exception& e) {
        nlohmann::json err{{"error", e.what()}, {"exit", 1}};
        std::cerr << err.dump() << "\n";
        return 1;
    }
}
