#pragma once

#include "latspec/graph.hpp"
#include "latspec/operators.hpp"

#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace latspec {

constexpr const char* kLibraryVersion = "0.1.0";

inline nlohmann::json rat_to_json(const Rat& q) {
    nlohmann::json j;
    const mpz_class num = q.get_num(), den = q.get_den();
    if (num.fits_slong_p() && den.fits_slong_p()) {
        j["num"] = num.get_si();
        j["den"] = den.get_si();
    } else {
        j["num"] = num.get_str();
        j["den"] = den.get_str();
    }
    return j;
}

inline nlohmann::json quadext_to_json(const QuadExt& v) {
    return nlohmann::json{{"r", rat_to_json(v.a)}, {"s", rat_to_json(v.b)}};
}

/// {n, edges, coords?, labels?} with edges (i<j) in lexicographic order;
/// coordinates are exact elements r + s*sqrt(3).
inline nlohmann::json graph_to_json(const Graph& g) {
    nlohmann::json j;
    j["n"] = g.vertex_count();
    auto edges = g.edges();  // already (i<j), lexicographic
    nlohmann::json je = nlohmann::json::array();
    for (auto [a, b] : edges) je.push_back({a, b});
    j["edges"] = std::move(je);
    if (g.has_coords()) {
        nlohmann::json jc = nlohmann::json::array();
        for (const PlanePoint& p : g.coords()) jc.push_back({quadext_to_json(p.x), quadext_to_json(p.y)});
        j["coords"] = std::move(jc);
    }
    if (g.has_labels()) {
        nlohmann::json jl = nlohmann::json::array();
        for (const LatticeLabel& l : g.labels()) jl.push_back({l.g1, l.g2, l.offset});
        j["labels"] = std::move(jl);
    }
    if (g.has_ambient_degree()) {
        nlohmann::json ja = nlohmann::json::array();
        for (int v = 0; v < g.vertex_count(); ++v) ja.push_back(g.ambient_degree(v));
        j["ambient_degree"] = std::move(ja);
    }
    return j;
}

inline Rat rat_from_json(const nlohmann::json& j) {
    mpz_class num, den;
    if (j.at("num").is_string())
        num = mpz_class(j.at("num").get<std::string>());
    else
        num = static_cast<long>(j.at("num").get<long long>());
    if (j.at("den").is_string())
        den = mpz_class(j.at("den").get<std::string>());
    else
        den = static_cast<long>(j.at("den").get<long long>());
    if (den == 0) throw std::invalid_argument("rat_from_json: zero denominator");
    Rat q(num, den);
    q.canonicalize();
    return q;
}

inline Graph graph_from_json(const nlohmann::json& j) {
    int n = j.at("n").get<int>();
    std::vector<std::pair<int, int>> edges;
    for (const auto& e : j.at("edges")) edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
    std::optional<std::vector<PlanePoint>> coords;
    if (j.contains("coords")) {
        coords.emplace();
        for (const auto& c : j.at("coords"))
            coords->push_back({QuadExt(rat_from_json(c.at(0).at("r")), rat_from_json(c.at(0).at("s"))),
                               QuadExt(rat_from_json(c.at(1).at("r")), rat_from_json(c.at(1).at("s")))});
    }
    std::optional<std::vector<LatticeLabel>> labels;
    if (j.contains("labels")) {
        labels.emplace();
        for (const auto& l : j.at("labels"))
            labels->push_back({l.at(0).get<long>(), l.at(1).get<long>(), l.at(2).get<int>()});
    }
    std::optional<std::vector<int>> amb;
    if (j.contains("ambient_degree")) {
        amb.emplace();
        for (const auto& a : j.at("ambient_degree")) amb->push_back(a.get<int>());
    }
    return Graph(n, edges, std::move(coords), std::move(labels), std::move(amb));
}

inline std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

/// CSV rows (E, N(E)) at every jump point plus a uniform grid; the sequence is
/// checked for monotonicity before anything is emitted.
inline std::string counting_function_csv(const CountingFunction& cf, double grid_min, double grid_max, double grid_step) {
    if (grid_step <= 0 || grid_max < grid_min) throw std::invalid_argument("counting_function_csv: bad grid");
    std::set<double> points;
    for (double e = grid_min; e <= grid_max + 1e-12; e += grid_step) points.insert(e);
    for (double e : cf.eigenvalues())
        if (e >= grid_min && e <= grid_max) points.insert(e);
    std::string out = "E,N\n";
    double prev = -1.0;
    bool first = true;
    for (double e : points) {
        double v = cf.value(e);
        if (!first && v < prev) throw std::logic_error("counting_function_csv: counting function not monotone");
        prev = v;
        first = false;
        out += format_double(e) + "," + format_double(v) + "\n";
    }
    return out;
}

/// temp file + rename, so readers never observe partial output
inline void atomic_write_file(const std::string& path, const std::string& content) {
    std::filesystem::path target(path);
    std::filesystem::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw std::runtime_error("atomic_write_file: cannot open " + tmp.string());
        f << content;
        if (!f.good()) throw std::runtime_error("atomic_write_file: write failed for " + tmp.string());
    }
    std::filesystem::rename(tmp, target);
}

}  // namespace latspec
