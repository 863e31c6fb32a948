#pragma once

#include "latspec/rational.hpp"

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace latspec {

/// Dense matrix over the exact rationals.
struct RationalMatrix {
    int rows = 0, cols = 0;
    std::vector<Rat> a;

    RationalMatrix() = default;
    RationalMatrix(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * static_cast<std::size_t>(c), Rat(0)) {
        if (r < 0 || c < 0) throw std::invalid_argument("RationalMatrix: negative dimension");
    }

    Rat& at(int i, int j) { return a[static_cast<std::size_t>(i) * static_cast<std::size_t>(cols) + static_cast<std::size_t>(j)]; }
    const Rat& at(int i, int j) const {
        return a[static_cast<std::size_t>(i) * static_cast<std::size_t>(cols) + static_cast<std::size_t>(j)];
    }

    static RationalMatrix identity(int n) {
        RationalMatrix m(n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    bool is_symmetric() const {
        if (rows != cols) return false;
        for (int i = 0; i < rows; ++i)
            for (int j = i + 1; j < cols; ++j)
                if (at(i, j) != at(j, i)) return false;
        return true;
    }

    std::vector<Rat> apply(const std::vector<Rat>& x) const {
        if (static_cast<int>(x.size()) != cols) throw std::invalid_argument("apply: size mismatch");
        std::vector<Rat> y(static_cast<std::size_t>(rows), Rat(0));
        for (int i = 0; i < rows; ++i) {
            Rat s(0);
            for (int j = 0; j < cols; ++j)
                if (at(i, j) != 0) s += at(i, j) * x[static_cast<std::size_t>(j)];
            y[static_cast<std::size_t>(i)] = s;
        }
        return y;
    }

    /// this - e * Id (square only)
    RationalMatrix shifted(const Rat& e) const {
        if (rows != cols) throw std::invalid_argument("shifted: not square");
        RationalMatrix m = *this;
        for (int i = 0; i < rows; ++i) m.at(i, i) -= e;
        return m;
    }

    friend bool operator==(const RationalMatrix& x, const RationalMatrix& y) {
        return x.rows == y.rows && x.cols == y.cols && x.a == y.a;
    }
};

namespace detail {

struct Echelon {
    int rank = 0;
    std::vector<int> pivot_col;                 // per pivot row
    std::vector<std::vector<mpz_class>> rows;   // fraction-free echelon form
};

/// Fraction-free (Bareiss) elimination.  Rows are first cleared to integers;
/// pivots are chosen among the remaining rows by least absolute value, which
/// keeps the minor growth down.
inline Echelon bareiss_echelon(const RationalMatrix& m) {
    Echelon ech;
    ech.rows.assign(static_cast<std::size_t>(m.rows), {});
    for (int i = 0; i < m.rows; ++i) {
        mpz_class lcm = 1;
        for (int j = 0; j < m.cols; ++j) {
            const mpz_class den = m.at(i, j).get_den();
            mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), den.get_mpz_t());
        }
        auto& row = ech.rows[static_cast<std::size_t>(i)];
        row.resize(static_cast<std::size_t>(m.cols));
        for (int j = 0; j < m.cols; ++j) {
            Rat scaled = m.at(i, j) * Rat(lcm);
            scaled.canonicalize();
            row[static_cast<std::size_t>(j)] = scaled.get_num();
        }
    }

    mpz_class prev = 1, t1, t2;
    int r = 0;
    for (int c = 0; c < m.cols && r < m.rows; ++c) {
        int pivot = -1;
        for (int i = r; i < m.rows; ++i) {
            const mpz_class& v = ech.rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)];
            if (v == 0) continue;
            if (pivot < 0 ||
                mpz_cmpabs(v.get_mpz_t(), ech.rows[static_cast<std::size_t>(pivot)][static_cast<std::size_t>(c)].get_mpz_t()) < 0)
                pivot = i;
        }
        if (pivot < 0) continue;  // free column
        std::swap(ech.rows[static_cast<std::size_t>(r)], ech.rows[static_cast<std::size_t>(pivot)]);
        const auto& prow = ech.rows[static_cast<std::size_t>(r)];
        for (int i = r + 1; i < m.rows; ++i) {
            auto& irow = ech.rows[static_cast<std::size_t>(i)];
            const mpz_class head = irow[static_cast<std::size_t>(c)];
            for (int j = c + 1; j < m.cols; ++j) {
                t1 = prow[static_cast<std::size_t>(c)] * irow[static_cast<std::size_t>(j)];
                t2 = head * prow[static_cast<std::size_t>(j)];
                t1 -= t2;
                mpz_divexact(irow[static_cast<std::size_t>(j)].get_mpz_t(), t1.get_mpz_t(), prev.get_mpz_t());
            }
            irow[static_cast<std::size_t>(c)] = 0;
        }
        prev = prow[static_cast<std::size_t>(c)];
        ech.pivot_col.push_back(c);
        ++r;
    }
    ech.rank = r;
    return ech;
}

}  // namespace detail

inline int rational_rank(const RationalMatrix& m) { return detail::bareiss_echelon(m).rank; }

struct KernelResult {
    int dimension = 0;
    std::vector<std::vector<Rat>> basis;  // each of length cols, content-normalized integers
};

/// Exact kernel basis.  Every returned vector is re-multiplied through the
/// input matrix and must vanish identically.
inline KernelResult rational_kernel(const RationalMatrix& m) {
    detail::Echelon ech = detail::bareiss_echelon(m);
    KernelResult out;
    out.dimension = m.cols - ech.rank;
    if (out.dimension == 0) return out;

    std::vector<bool> is_pivot(static_cast<std::size_t>(m.cols), false);
    for (int c : ech.pivot_col) is_pivot[static_cast<std::size_t>(c)] = true;

    for (int f = 0; f < m.cols; ++f) {
        if (is_pivot[static_cast<std::size_t>(f)]) continue;
        std::vector<Rat> x(static_cast<std::size_t>(m.cols), Rat(0));
        x[static_cast<std::size_t>(f)] = 1;
        for (int k = ech.rank - 1; k >= 0; --k) {
            int c = ech.pivot_col[static_cast<std::size_t>(k)];
            const auto& row = ech.rows[static_cast<std::size_t>(k)];
            Rat s(0);
            for (int j = c + 1; j < m.cols; ++j)
                if (x[static_cast<std::size_t>(j)] != 0 && row[static_cast<std::size_t>(j)] != 0)
                    s += Rat(row[static_cast<std::size_t>(j)]) * x[static_cast<std::size_t>(j)];
            if (s != 0) {
                x[static_cast<std::size_t>(c)] = -s / Rat(row[static_cast<std::size_t>(c)]);
                x[static_cast<std::size_t>(c)].canonicalize();
            }
        }
        // clear denominators and divide out the content
        mpz_class lcm = 1, gcd = 0;
        for (const Rat& v : x) {
            const mpz_class den = v.get_den();
            mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), den.get_mpz_t());
        }
        for (Rat& v : x) {
            v *= Rat(lcm);
            v.canonicalize();
        }
        for (const Rat& v : x) {
            const mpz_class num = v.get_num();
            mpz_gcd(gcd.get_mpz_t(), gcd.get_mpz_t(), num.get_mpz_t());
        }
        if (gcd > 1)
            for (Rat& v : x) {
                v /= Rat(gcd);
                v.canonicalize();
            }
        out.basis.push_back(std::move(x));
    }

    for (const auto& v : out.basis)
        for (const Rat& r : m.apply(v))
            if (r != 0) throw std::logic_error("rational_kernel: basis vector fails exact verification");
    return out;
}

/// Exact multiplicity of e as an eigenvalue of the square matrix m.
inline long exact_eigenvalue_multiplicity(const RationalMatrix& m, const Rat& e) {
    return rational_kernel(m.shifted(e)).dimension;
}

}  // namespace latspec
