#pragma once

#include "latspec/rng.hpp"
#include "latspec/sym_eigen.hpp"

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace test_support {

inline latspec::SymmetricMatrix random_symmetric(int n, std::uint64_t seed) {
    latspec::SymmetricMatrix a(n);
    std::uint64_t ctr = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= i; ++j) a.at(i, j) = 2.0 * latspec::rng::uniform01(seed, ctr++) - 1.0;
    return a;
}

// dense LU solve with partial pivoting, used only as a test oracle
class Lu {
public:
    explicit Lu(std::vector<std::vector<double>> m) : a_(std::move(m)), n_(static_cast<int>(a_.size())), perm_(static_cast<std::size_t>(n_)) {
        for (int i = 0; i < n_; ++i) perm_[static_cast<std::size_t>(i)] = i;
        for (int c = 0; c < n_; ++c) {
            int piv = c;
            for (int r = c + 1; r < n_; ++r)
                if (std::fabs(a_[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)]) >
                    std::fabs(a_[static_cast<std::size_t>(piv)][static_cast<std::size_t>(c)]))
                    piv = r;
            std::swap(a_[static_cast<std::size_t>(c)], a_[static_cast<std::size_t>(piv)]);
            std::swap(perm_[static_cast<std::size_t>(c)], perm_[static_cast<std::size_t>(piv)]);
            double d = a_[static_cast<std::size_t>(c)][static_cast<std::size_t>(c)];
            if (d == 0.0) d = a_[static_cast<std::size_t>(c)][static_cast<std::size_t>(c)] = 1e-300;
            for (int r = c + 1; r < n_; ++r) {
                double f = a_[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] / d;
                a_[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] = f;
                for (int k = c + 1; k < n_; ++k)
                    a_[static_cast<std::size_t>(r)][static_cast<std::size_t>(k)] -= f * a_[static_cast<std::size_t>(c)][static_cast<std::size_t>(k)];
            }
        }
    }

    std::vector<double> solve(const std::vector<double>& b) const {
        std::vector<double> x(static_cast<std::size_t>(n_));
        for (int i = 0; i < n_; ++i) x[static_cast<std::size_t>(i)] = b[static_cast<std::size_t>(perm_[static_cast<std::size_t>(i)])];
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < i; ++j)
                x[static_cast<std::size_t>(i)] -= a_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] * x[static_cast<std::size_t>(j)];
        for (int i = n_ - 1; i >= 0; --i) {
            for (int j = i + 1; j < n_; ++j)
                x[static_cast<std::size_t>(i)] -= a_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] * x[static_cast<std::size_t>(j)];
            x[static_cast<std::size_t>(i)] /= a_[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)];
        }
        return x;
    }

private:
    std::vector<std::vector<double>> a_;
    int n_;
    std::vector<int> perm_;
};

/// residual ||A v - lambda v|| for the unit vector produced by a few rounds of
/// inverse iteration at lambda
inline double inverse_iteration_residual(const latspec::SymmetricMatrix& a, double lambda) {
    int n = a.n;
    double shift = lambda + 1e-11 * std::max(1.0, std::fabs(lambda));
    std::vector<std::vector<double>> m(static_cast<std::size_t>(n), std::vector<double>(static_cast<std::size_t>(n)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = a.get(i, j) - (i == j ? shift : 0.0);
    Lu lu(std::move(m));
    std::vector<double> v(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = latspec::rng::uniform01(12345, static_cast<std::uint64_t>(i)) + 0.1;
    for (int round = 0; round < 4; ++round) {
        v = lu.solve(v);
        double norm = 0.0;
        for (double x : v) norm += x * x;
        norm = std::sqrt(norm);
        for (double& x : v) x /= norm;
    }
    double res = 0.0;
    for (int i = 0; i < n; ++i) {
        double row = 0.0;
        for (int j = 0; j < n; ++j) row += a.get(i, j) * v[static_cast<std::size_t>(j)];
        row -= lambda * v[static_cast<std::size_t>(i)];
        res += row * row;
    }
    return std::sqrt(res);
}

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(static_cast<std::size_t>(n)) {
        for (int i = 0; i < n; ++i) parent[static_cast<std::size_t>(i)] = i;
    }
    int find(int x) {
        while (parent[static_cast<std::size_t>(x)] != x) {
            parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
            x = parent[static_cast<std::size_t>(x)];
        }
        return x;
    }
    void unite(int x, int y) { parent[static_cast<std::size_t>(find(x))] = find(y); }
};

}  // namespace test_support
