#pragma once

#include <array>
#include <cmath>

namespace conewave {

// Forward-mode dual number carrying M directional derivatives alongside the
// value. Used to differentiate metric coefficients with respect to the base
// point (t, x, y) exactly, instead of stacking finite differences.
template <int M>
struct Dual {
    double v = 0.0;
    std::array<double, M> d{};

    Dual() = default;
    Dual(double value) : v(value) {} // derivative-free constant
    static Dual seeded(double value, int axis) {
        Dual r(value);
        r.d[axis] = 1.0;
        return r;
    }

    Dual operator-() const {
        Dual r(-v);
        for (int i = 0; i < M; ++i) r.d[i] = -d[i];
        return r;
    }
    Dual& operator+=(const Dual& o) {
        v += o.v;
        for (int i = 0; i < M; ++i) d[i] += o.d[i];
        return *this;
    }
    Dual& operator-=(const Dual& o) {
        v -= o.v;
        for (int i = 0; i < M; ++i) d[i] -= o.d[i];
        return *this;
    }
    Dual& operator*=(const Dual& o) {
        for (int i = 0; i < M; ++i) d[i] = d[i] * o.v + v * o.d[i];
        v *= o.v;
        return *this;
    }
    Dual& operator/=(const Dual& o) {
        const double inv = 1.0 / o.v;
        for (int i = 0; i < M; ++i) d[i] = (d[i] - v * inv * o.d[i]) * inv;
        v *= inv;
        return *this;
    }

    friend Dual operator+(Dual a, const Dual& b) { return a += b; }
    friend Dual operator-(Dual a, const Dual& b) { return a -= b; }
    friend Dual operator*(Dual a, const Dual& b) { return a *= b; }
    friend Dual operator/(Dual a, const Dual& b) { return a /= b; }
    friend bool operator<(const Dual& a, const Dual& b) { return a.v < b.v; }
    friend bool operator>(const Dual& a, const Dual& b) { return a.v > b.v; }
};

template <int M>
inline Dual<M> sin(const Dual<M>& a) {
    Dual<M> r(std::sin(a.v));
    const double c = std::cos(a.v);
    for (int i = 0; i < M; ++i) r.d[i] = c * a.d[i];
    return r;
}

template <int M>
inline Dual<M> cos(const Dual<M>& a) {
    Dual<M> r(std::cos(a.v));
    const double s = -std::sin(a.v);
    for (int i = 0; i < M; ++i) r.d[i] = s * a.d[i];
    return r;
}

template <int M>
inline Dual<M> exp(const Dual<M>& a) {
    Dual<M> r(std::exp(a.v));
    for (int i = 0; i < M; ++i) r.d[i] = r.v * a.d[i];
    return r;
}

template <int M>
inline Dual<M> sqrt(const Dual<M>& a) {
    Dual<M> r(std::sqrt(a.v));
    const double inv = 0.5 / r.v;
    for (int i = 0; i < M; ++i) r.d[i] = inv * a.d[i];
    return r;
}

// min/max propagate the derivative of the selected branch.
template <int M>
inline Dual<M> min(const Dual<M>& a, const Dual<M>& b) { return a.v <= b.v ? a : b; }
template <int M>
inline Dual<M> max(const Dual<M>& a, const Dual<M>& b) { return a.v >= b.v ? a : b; }

inline double value_of(double x) { return x; }
template <int M>
inline double value_of(const Dual<M>& x) { return x.v; }

// Scalar-generic entry points so templated numeric code can call sin(x) etc.
// on both double and Dual arguments.
using std::cos;
using std::exp;
using std::sin;
using std::sqrt;

using Dual3 = Dual<3>;

} // namespace conewave
