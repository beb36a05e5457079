#pragma once

#include <array>
#include <cmath>

#include "conewave/errors.hpp"

namespace conewave {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2() = default;
    Vec2(double x_, double y_) : x(x_), y(y_) {}

    Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
    Vec2 operator/(double s) const { return {x / s, y / s}; }
    Vec2& operator+=(const Vec2& o) { x += o.x; y += o.y; return *this; }
    Vec2& operator-=(const Vec2& o) { x -= o.x; y -= o.y; return *this; }
};

inline Vec2 operator*(double s, const Vec2& v) { return v * s; }
inline double dot(const Vec2& a, const Vec2& b) { return a.x * b.x + a.y * b.y; }
inline double cross(const Vec2& a, const Vec2& b) { return a.x * b.y - a.y * b.x; }
inline double norm(const Vec2& a) { return std::sqrt(dot(a, a)); }
inline double dist(const Vec2& a, const Vec2& b) { return norm(a - b); }
// Clockwise quarter turn; for a counter-clockwise ring this points outwards.
inline Vec2 perp_cw(const Vec2& v) { return {v.y, -v.x}; }

// Dimension-generic small vectors/symmetric matrices used by the metric core.
template <class T, int N> using VecN = std::array<T, N>;
template <class T, int N> using SymN = std::array<std::array<T, N>, N>;

template <class T, int N>
inline VecN<T, N> mat_vec(const SymN<T, N>& m, const VecN<T, N>& v) {
    VecN<T, N> r{};
    for (int i = 0; i < N; ++i) {
        T acc(0.0);
        for (int j = 0; j < N; ++j) acc += m[i][j] * v[j];
        r[i] = acc;
    }
    return r;
}

template <class T, int N>
inline T quad_form(const SymN<T, N>& m, const VecN<T, N>& u, const VecN<T, N>& v) {
    T acc(0.0);
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) acc += u[i] * m[i][j] * v[j];
    return acc;
}

inline VecN<double, 2> to_array(const Vec2& v) { return {v.x, v.y}; }
inline Vec2 from_array(const VecN<double, 2>& a) { return {a[0], a[1]}; }

// Dense symmetric spacetime matrix, indices 0..2 with 0 = time.
template <class T>
struct Sym3T {
    std::array<std::array<T, 3>, 3> m{};
    T& operator()(int i, int j) { return m[i][j]; }
    const T& operator()(int i, int j) const { return m[i][j]; }
};
using Sym3 = Sym3T<double>;

inline double det3(const Sym3& g) {
    return g(0, 0) * (g(1, 1) * g(2, 2) - g(1, 2) * g(2, 1)) -
           g(0, 1) * (g(1, 0) * g(2, 2) - g(1, 2) * g(2, 0)) +
           g(0, 2) * (g(1, 0) * g(2, 1) - g(1, 1) * g(2, 0));
}

// Inverse by adjugate; throws SingularMetric when the determinant underflows
// relative to the matrix scale.
inline Sym3 inverse3(const Sym3& g) {
    const double d = det3(g);
    double scale = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) scale = std::max(scale, std::abs(g(i, j)));
    if (std::abs(d) < 1e-14 * scale * scale * scale)
        throw Error(ErrorCode::SingularMetric, "metric matrix is numerically singular");
    const double inv = 1.0 / d;
    Sym3 r;
    r(0, 0) = (g(1, 1) * g(2, 2) - g(1, 2) * g(2, 1)) * inv;
    r(0, 1) = (g(0, 2) * g(2, 1) - g(0, 1) * g(2, 2)) * inv;
    r(0, 2) = (g(0, 1) * g(1, 2) - g(0, 2) * g(1, 1)) * inv;
    r(1, 0) = (g(1, 2) * g(2, 0) - g(1, 0) * g(2, 2)) * inv;
    r(1, 1) = (g(0, 0) * g(2, 2) - g(0, 2) * g(2, 0)) * inv;
    r(1, 2) = (g(0, 2) * g(1, 0) - g(0, 0) * g(1, 2)) * inv;
    r(2, 0) = (g(1, 0) * g(2, 1) - g(1, 1) * g(2, 0)) * inv;
    r(2, 1) = (g(0, 1) * g(2, 0) - g(0, 0) * g(2, 1)) * inv;
    r(2, 2) = (g(0, 0) * g(1, 1) - g(0, 1) * g(1, 0)) * inv;
    return r;
}

// Solve h * out = rhs for symmetric positive-definite 2x2 h.
inline Vec2 solve_spd2(const SymN<double, 2>& h, const Vec2& rhs) {
    const double d = h[0][0] * h[1][1] - h[0][1] * h[1][0];
    if (std::abs(d) < 1e-300)
        throw Error(ErrorCode::SingularMetric, "2x2 metric is singular");
    return {(h[1][1] * rhs.x - h[0][1] * rhs.y) / d,
            (h[0][0] * rhs.y - h[1][0] * rhs.x) / d};
}

} // namespace conewave
