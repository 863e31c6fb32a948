#pragma once

#include "latspec/rational_linalg.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace latspec {

/// Symmetric matrix in packed lower-triangular storage, a(i,j) for j <= i.
struct SymmetricMatrix {
    int n = 0;
    std::vector<double> packed;

    SymmetricMatrix() = default;
    explicit SymmetricMatrix(int order)
        : n(order), packed(static_cast<std::size_t>(order) * (static_cast<std::size_t>(order) + 1) / 2, 0.0) {
        if (order < 0) throw std::invalid_argument("SymmetricMatrix: negative order");
    }

    static SymmetricMatrix from_rational(const RationalMatrix& m) {
        if (m.rows != m.cols) throw std::invalid_argument("from_rational: not square");
        SymmetricMatrix s(m.rows);
        for (int i = 0; i < m.rows; ++i)
            for (int j = 0; j <= i; ++j) s.at(i, j) = to_double(m.at(i, j));
        return s;
    }

    double& at(int i, int j) {
        if (j > i) std::swap(i, j);
        return packed[static_cast<std::size_t>(i) * (static_cast<std::size_t>(i) + 1) / 2 + static_cast<std::size_t>(j)];
    }
    double get(int i, int j) const {
        if (j > i) std::swap(i, j);
        return packed[static_cast<std::size_t>(i) * (static_cast<std::size_t>(i) + 1) / 2 + static_cast<std::size_t>(j)];
    }

    double inf_norm() const {
        double best = 0.0;
        for (int i = 0; i < n; ++i) {
            double row = 0.0;
            for (int j = 0; j < n; ++j) row += std::fabs(get(i, j));
            best = std::max(best, row);
        }
        return best;
    }

    double trace() const {
        double t = 0.0;
        for (int i = 0; i < n; ++i) t += get(i, i);
        return t;
    }
};

struct Spectrum {
    std::vector<double> eigenvalues;  // ascending, with multiplicity
    double residual_bound = 0.0;
};

class EigenError : public std::runtime_error {
public:
    EigenError(const std::string& msg, int index) : std::runtime_error(msg), stuck_index(index) {}
    int stuck_index;
};

namespace detail {

inline double pythag(double a, double b) {
    double absa = std::fabs(a), absb = std::fabs(b);
    if (absa > absb) {
        double r = absb / absa;
        return absa * std::sqrt(1.0 + r * r);
    }
    if (absb == 0.0) return 0.0;
    double r = absa / absb;
    return absb * std::sqrt(1.0 + r * r);
}

// Householder reduction to tridiagonal form, eigenvalues-only variant.
// Works on the lower triangle of the full working buffer a (row-major n*n).
inline void tridiagonalize(std::vector<double>& a, int n, std::vector<double>& d, std::vector<double>& e) {
    auto A = [&a, n](int i, int j) -> double& { return a[static_cast<std::size_t>(i) * static_cast<std::size_t>(n) + static_cast<std::size_t>(j)]; };
    d.assign(static_cast<std::size_t>(n), 0.0);
    e.assign(static_cast<std::size_t>(n), 0.0);
    for (int i = n - 1; i >= 1; --i) {
        int l = i - 1;
        double h = 0.0, scale = 0.0;
        if (l > 0) {
            for (int k = 0; k <= l; ++k) scale += std::fabs(A(i, k));
            if (scale == 0.0) {
                e[static_cast<std::size_t>(i)] = A(i, l);
            } else {
                for (int k = 0; k <= l; ++k) {
                    A(i, k) /= scale;
                    h += A(i, k) * A(i, k);
                }
                double f = A(i, l);
                double g = f >= 0.0 ? -std::sqrt(h) : std::sqrt(h);
                e[static_cast<std::size_t>(i)] = scale * g;
                h -= f * g;
                A(i, l) = f - g;
                f = 0.0;
                for (int j = 0; j <= l; ++j) {
                    g = 0.0;
                    for (int k = 0; k <= j; ++k) g += A(j, k) * A(i, k);
                    for (int k = j + 1; k <= l; ++k) g += A(k, j) * A(i, k);
                    e[static_cast<std::size_t>(j)] = g / h;
                    f += e[static_cast<std::size_t>(j)] * A(i, j);
                }
                double hh = f / (h + h);
                for (int j = 0; j <= l; ++j) {
                    f = A(i, j);
                    double g2 = e[static_cast<std::size_t>(j)] - hh * f;
                    e[static_cast<std::size_t>(j)] = g2;
                    for (int k = 0; k <= j; ++k) A(j, k) -= f * e[static_cast<std::size_t>(k)] + g2 * A(i, k);
                }
            }
        } else {
            e[static_cast<std::size_t>(i)] = A(i, l);
        }
        d[static_cast<std::size_t>(i)] = h;
    }
    for (int i = 0; i < n; ++i) d[static_cast<std::size_t>(i)] = A(i, i);
}

// Householder reduction with accumulation of the orthogonal transform in a
// (classic tred2); on exit a holds Q, to be rotated further by the QL sweeps.
inline void tridiagonalize_vectors(std::vector<double>& a, int n, std::vector<double>& d, std::vector<double>& e) {
    auto A = [&a, n](int i, int j) -> double& { return a[static_cast<std::size_t>(i) * static_cast<std::size_t>(n) + static_cast<std::size_t>(j)]; };
    d.assign(static_cast<std::size_t>(n), 0.0);
    e.assign(static_cast<std::size_t>(n), 0.0);
    for (int i = n - 1; i >= 1; --i) {
        int l = i - 1;
        double h = 0.0, scale = 0.0;
        if (l > 0) {
            for (int k = 0; k <= l; ++k) scale += std::fabs(A(i, k));
            if (scale == 0.0) {
                e[static_cast<std::size_t>(i)] = A(i, l);
            } else {
                for (int k = 0; k <= l; ++k) {
                    A(i, k) /= scale;
                    h += A(i, k) * A(i, k);
                }
                double f = A(i, l);
                double g = f >= 0.0 ? -std::sqrt(h) : std::sqrt(h);
                e[static_cast<std::size_t>(i)] = scale * g;
                h -= f * g;
                A(i, l) = f - g;
                f = 0.0;
                for (int j = 0; j <= l; ++j) {
                    A(j, i) = A(i, j) / h;
                    g = 0.0;
                    for (int k = 0; k <= j; ++k) g += A(j, k) * A(i, k);
                    for (int k = j + 1; k <= l; ++k) g += A(k, j) * A(i, k);
                    e[static_cast<std::size_t>(j)] = g / h;
                    f += e[static_cast<std::size_t>(j)] * A(i, j);
                }
                double hh = f / (h + h);
                for (int j = 0; j <= l; ++j) {
                    f = A(i, j);
                    double g2 = e[static_cast<std::size_t>(j)] - hh * f;
                    e[static_cast<std::size_t>(j)] = g2;
                    for (int k = 0; k <= j; ++k) A(j, k) -= f * e[static_cast<std::size_t>(k)] + g2 * A(i, k);
                }
            }
        } else {
            e[static_cast<std::size_t>(i)] = A(i, l);
        }
        d[static_cast<std::size_t>(i)] = h;
    }
    d[0] = 0.0;
    e[0] = 0.0;
    for (int i = 0; i < n; ++i) {
        int l = i - 1;
        if (d[static_cast<std::size_t>(i)] != 0.0) {
            for (int j = 0; j <= l; ++j) {
                double g = 0.0;
                for (int k = 0; k <= l; ++k) g += A(i, k) * A(k, j);
                for (int k = 0; k <= l; ++k) A(k, j) -= g * A(k, i);
            }
        }
        d[static_cast<std::size_t>(i)] = A(i, i);
        A(i, i) = 1.0;
        for (int j = 0; j <= l; ++j) A(j, i) = A(i, j) = 0.0;
    }
}

// Implicit-shift QL with Wilkinson shift on the tridiagonal (d, e).
// Deflation: |e[m]| <= 1e-14 * (|d[m]| + |d[m+1]|).  The total sweep budget is
// 30*n; exceeding it raises EigenError with the index being worked on.
// If z is non-null (full n*n buffer), rotations are accumulated into it.
inline void ql_implicit(std::vector<double>& d, std::vector<double>& e, int n, std::vector<double>* z) {
    constexpr double kDeflate = 1e-14;
    auto Z = [z, n](int i, int j) -> double& { return (*z)[static_cast<std::size_t>(i) * static_cast<std::size_t>(n) + static_cast<std::size_t>(j)]; };
    for (int i = 1; i < n; ++i) e[static_cast<std::size_t>(i - 1)] = e[static_cast<std::size_t>(i)];
    e[static_cast<std::size_t>(n - 1)] = 0.0;
    long sweeps = 0;
    const long max_sweeps = 30L * std::max(n, 1);
    for (int l = 0; l < n; ++l) {
        int m;
        do {
            for (m = l; m < n - 1; ++m) {
                double dd = std::fabs(d[static_cast<std::size_t>(m)]) + std::fabs(d[static_cast<std::size_t>(m + 1)]);
                if (std::fabs(e[static_cast<std::size_t>(m)]) <= kDeflate * dd) break;
            }
            if (m != l) {
                if (++sweeps > max_sweeps)
                    throw EigenError("sym_eigenvalues: QL failed to converge at index " + std::to_string(l), l);
                double g = (d[static_cast<std::size_t>(l + 1)] - d[static_cast<std::size_t>(l)]) / (2.0 * e[static_cast<std::size_t>(l)]);
                double r = pythag(g, 1.0);
                g = d[static_cast<std::size_t>(m)] - d[static_cast<std::size_t>(l)] +
                    e[static_cast<std::size_t>(l)] / (g + std::copysign(r, g));
                double s = 1.0, c = 1.0, p = 0.0;
                int i;
                for (i = m - 1; i >= l; --i) {
                    double f = s * e[static_cast<std::size_t>(i)];
                    double b = c * e[static_cast<std::size_t>(i)];
                    r = pythag(f, g);
                    e[static_cast<std::size_t>(i + 1)] = r;
                    if (r == 0.0) {
                        d[static_cast<std::size_t>(i + 1)] -= p;
                        e[static_cast<std::size_t>(m)] = 0.0;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d[static_cast<std::size_t>(i + 1)] - p;
                    r = (d[static_cast<std::size_t>(i)] - g) * s + 2.0 * c * b;
                    p = s * r;
                    d[static_cast<std::size_t>(i + 1)] = g + p;
                    g = c * r - b;
                    if (z) {
                        for (int k = 0; k < n; ++k) {
                            double f2 = Z(k, i + 1);
                            Z(k, i + 1) = s * Z(k, i) + c * f2;
                            Z(k, i) = c * Z(k, i) - s * f2;
                        }
                    }
                }
                if (r == 0.0 && i >= l) continue;
                d[static_cast<std::size_t>(l)] -= p;
                e[static_cast<std::size_t>(l)] = g;
                e[static_cast<std::size_t>(m)] = 0.0;
            }
        } while (m != l);
    }
}

}  // namespace detail

/// All eigenvalues of a, sorted ascending (Householder + implicit-shift QL).
inline Spectrum sym_eigenvalues(const SymmetricMatrix& a) {
    int n = a.n;
    if (n < 1) throw std::invalid_argument("sym_eigenvalues: empty matrix");
    if (n > 3000) throw std::invalid_argument("sym_eigenvalues: order exceeds the dense limit of 3000");
    for (double v : a.packed)
        if (!std::isfinite(v)) throw std::invalid_argument("sym_eigenvalues: non-finite entry");
    Spectrum spec;
    spec.residual_bound = 1e-9 * std::max(1.0, a.inf_norm());
    if (n == 1) {
        spec.eigenvalues = {a.get(0, 0)};
        return spec;
    }
    std::vector<double> work(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0.0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= i; ++j)
            work[static_cast<std::size_t>(i) * static_cast<std::size_t>(n) + static_cast<std::size_t>(j)] = a.get(i, j);
    std::vector<double> d, e;
    detail::tridiagonalize(work, n, d, e);
    detail::ql_implicit(d, e, n, nullptr);
    std::sort(d.begin(), d.end());
    spec.eigenvalues = std::move(d);
    return spec;
}

struct EigenDecomposition {
    int n = 0;
    std::vector<double> eigenvalues;  // ascending
    std::vector<double> vectors;      // column k (at i*n+k) is the eigenvector of eigenvalues[k]
    double vector_at(int i, int k) const {
        return vectors[static_cast<std::size_t>(i) * static_cast<std::size_t>(n) + static_cast<std::size_t>(k)];
    }
};

/// Eigenvalues and an orthonormal eigenbasis; used for spectral projectors and
/// as an oracle in tests.
inline EigenDecomposition sym_eigensystem(const SymmetricMatrix& a) {
    int n = a.n;
    if (n < 1) throw std::invalid_argument("sym_eigensystem: empty matrix");
    EigenDecomposition dec;
    dec.n = n;
    if (n == 1) {
        dec.eigenvalues = {a.get(0, 0)};
        dec.vectors = {1.0};
        return dec;
    }
    std::vector<double> z(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0.0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= i; ++j)
            z[static_cast<std::size_t>(i) * static_cast<std::size_t>(n) + static_cast<std::size_t>(j)] = a.get(i, j);
    std::vector<double> d, e;
    detail::tridiagonalize_vectors(z, n, d, e);
    detail::ql_implicit(d, e, n, &z);
    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&d](int x, int y) { return d[static_cast<std::size_t>(x)] < d[static_cast<std::size_t>(y)]; });
    dec.eigenvalues.resize(static_cast<std::size_t>(n));
    dec.vectors.resize(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        dec.eigenvalues[static_cast<std::size_t>(k)] = d[static_cast<std::size_t>(order[static_cast<std::size_t>(k)])];
        for (int i = 0; i < n; ++i)
            dec.vectors[static_cast<std::size_t>(i) * static_cast<std::size_t>(n) + static_cast<std::size_t>(k)] =
                z[static_cast<std::size_t>(i) * static_cast<std::size_t>(n) + static_cast<std::size_t>(order[static_cast<std::size_t>(k)])];
    }
    return dec;
}

}  // namespace latspec
