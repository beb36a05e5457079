#pragma once

#include "conewave/medium.hpp"

namespace conewave {

// Spacetime vector tau * d/dt + v; cone geodesics use tau = 1 with F(v) = 1.
struct SpacetimeVec {
    double tau = 1.0;
    Vec2 v;
};

enum class ChristoffelRoute { FormalG, LorentzRanders };

// Symbols gamma[k][i][j], indices 0..2 with 0 = time, symmetric in (i, j).
struct Christoffels {
    double gamma[3][3][3] = {};
    ChristoffelRoute route = ChristoffelRoute::FormalG;
};

// Fundamental tensor of G = dt^2 - F^2 in block form: g00 = 1, g0i = 0,
// gij = -g^F at the spatial direction of dir.  Zero-homogeneous in dir.
Sym3 g_matrix_G(const MediumField& m, double t, const Vec2& x, const SpacetimeVec& dir);

// Lorentz metric of an ellipsoidal medium: g00 = 1 - h(W,W), g0i = h(e_i, W),
// gij = -h_ij.  Lorentzian in every wind regime.
Sym3 lorentz_metric(const MediumField& m, double t, const Vec2& x);

// Formal symbols of G: base-point derivatives of g_ij taken at fixed natural
// coordinates of dir, computed exactly with dual numbers.
Christoffels formal_christoffels(const MediumField& m, double t, const Vec2& x,
                                 const SpacetimeVec& dir);

// Classical symbols of the Lorentz metric (direction-independent).
Christoffels lorentz_christoffels(const MediumField& m, double t, const Vec2& x);

// Finite-difference variants retained as the generic/cross-check route.
// Central differences with the given base-point step; the time stencil falls
// back to a second-order one-sided difference at t < step (media start at
// t = 0).  Throws DomainEdge when the spatial stencil leaves the domain.
Christoffels formal_christoffels_fd(const MediumField& m, double t, const Vec2& x,
                                    const SpacetimeVec& dir, double step);
Christoffels lorentz_christoffels_fd(const MediumField& m, double t, const Vec2& x, double step);

// Default relative FD step (times the domain extent).
inline constexpr double kChristoffelFdRelStep = 1e-4;

} // namespace conewave
