#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

namespace latspec {

using Rat = mpq_class;

inline Rat rat(long num, long den = 1) {
    if (den == 0) throw std::invalid_argument("rat: zero denominator");
    Rat q(num, den);
    q.canonicalize();
    return q;
}

inline double to_double(const Rat& q) { return q.get_d(); }

inline std::string to_string(const Rat& q) { return q.get_str(); }

/// Element of Q[sqrt(3)], stored as a + b*sqrt(3).  Closed under +,-,* and
/// compared exactly; this is the coordinate field of the Kagome lattice.
struct QuadExt {
    Rat a{0}, b{0};

    QuadExt() = default;
    QuadExt(Rat ra) : a(std::move(ra)) {}
    QuadExt(long ra) : a(ra) {}
    QuadExt(Rat ra, Rat rb) : a(std::move(ra)), b(std::move(rb)) {}

    bool is_rational() const { return b == 0; }

    friend QuadExt operator+(const QuadExt& x, const QuadExt& y) { return {x.a + y.a, x.b + y.b}; }
    friend QuadExt operator-(const QuadExt& x, const QuadExt& y) { return {x.a - y.a, x.b - y.b}; }
    friend QuadExt operator-(const QuadExt& x) { return {-x.a, -x.b}; }
    friend QuadExt operator*(const QuadExt& x, const QuadExt& y) {
        return {x.a * y.a + 3 * x.b * y.b, x.a * y.b + x.b * y.a};
    }
    friend bool operator==(const QuadExt& x, const QuadExt& y) { return x.a == y.a && x.b == y.b; }
    friend bool operator!=(const QuadExt& x, const QuadExt& y) { return !(x == y); }

    // lexicographic on (a,b); container ordering only, not the numeric order
    friend bool operator<(const QuadExt& x, const QuadExt& y) {
        int c = cmp(x.a, y.a);
        if (c != 0) return c < 0;
        return cmp(x.b, y.b) < 0;
    }

    double value() const { return a.get_d() + b.get_d() * 1.7320508075688772935; }
};

struct PlanePoint {
    QuadExt x, y;

    friend PlanePoint operator+(const PlanePoint& p, const PlanePoint& q) { return {p.x + q.x, p.y + q.y}; }
    friend PlanePoint operator-(const PlanePoint& p, const PlanePoint& q) { return {p.x - q.x, p.y - q.y}; }
    friend bool operator==(const PlanePoint& p, const PlanePoint& q) { return p.x == q.x && p.y == q.y; }
    friend bool operator<(const PlanePoint& p, const PlanePoint& q) {
        if (p.x != q.x) return p.x < q.x;
        return p.y < q.y;
    }
};

inline QuadExt squared_distance(const PlanePoint& p, const PlanePoint& q) {
    QuadExt dx = p.x - q.x, dy = p.y - q.y;
    return dx * dx + dy * dy;
}

}  // namespace latspec
