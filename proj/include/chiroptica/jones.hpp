// jones.hpp
// Minimal complex 2-vector / 2x2 matrix arithmetic for Jones calculus.

#pragma once

#include <cmath>
#include <complex>

namespace chiroptica {

using cplx = std::complex<double>;

struct Vec2c {
    cplx x{};
    cplx y{};

    double norm2() const { return std::norm(x) + std::norm(y); }
    double norm() const { return std::sqrt(norm2()); }
};

inline Vec2c operator+(const Vec2c& a, const Vec2c& b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2c operator-(const Vec2c& a, const Vec2c& b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2c operator*(cplx s, const Vec2c& v) { return {s * v.x, s * v.y}; }

// Hermitian inner product, conjugate-linear in the first argument.
inline cplx dot(const Vec2c& a, const Vec2c& b) {
    return std::conj(a.x) * b.x + std::conj(a.y) * b.y;
}

// Row-major 2x2 complex matrix [[a, b], [c, d]].
struct Mat2c {
    cplx a{};
    cplx b{};
    cplx c{};
    cplx d{};

    static Mat2c identity() { return {1.0, 0.0, 0.0, 1.0}; }

    Mat2c adjoint() const {
        return {std::conj(a), std::conj(c), std::conj(b), std::conj(d)};
    }

    cplx trace() const { return a + d; }
    cplx det() const { return a * d - b * c; }
};

inline Vec2c operator*(const Mat2c& m, const Vec2c& v) {
    return {m.a * v.x + m.b * v.y, m.c * v.x + m.d * v.y};
}

inline Mat2c operator*(const Mat2c& m, const Mat2c& n) {
    return {m.a * n.a + m.b * n.c, m.a * n.b + m.b * n.d,
            m.c * n.a + m.d * n.c, m.c * n.b + m.d * n.d};
}

inline Mat2c operator*(cplx s, const Mat2c& m) { return {s * m.a, s * m.b, s * m.c, s * m.d}; }
inline Mat2c operator+(const Mat2c& m, const Mat2c& n) { return {m.a + n.a, m.b + n.b, m.c + n.c, m.d + n.d}; }
inline Mat2c operator-(const Mat2c& m, const Mat2c& n) { return {m.a - n.a, m.b - n.b, m.c - n.c, m.d - n.d}; }

inline double max_abs_diff(const Mat2c& m, const Mat2c& n) {
    return std::max(std::max(std::abs(m.a - n.a), std::abs(m.b - n.b)),
                    std::max(std::abs(m.c - n.c), std::abs(m.d - n.d)));
}

inline double max_abs_diff(const Vec2c& v, const Vec2c& w) {
    return std::max(std::abs(v.x - w.x), std::abs(v.y - w.y));
}

inline bool is_unitary(const Mat2c& m, double tol = 1e-12) {
    return max_abs_diff(m.adjoint() * m, Mat2c::identity()) <= tol;
}

} // namespace chiroptica
