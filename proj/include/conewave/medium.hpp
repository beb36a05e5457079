#pragma once

#include <utility>
#include <vector>

#include "conewave/expr.hpp"
#include "conewave/finsler.hpp"

namespace conewave {

struct Domain {
    double xmin = -1.0, xmax = 1.0;
    double ymin = -1.0, ymax = 1.0;
    double t_end = 1.0;

    bool contains(const Vec2& p, double pad = 0.0) const {
        return p.x >= xmin + pad && p.x <= xmax - pad && p.y >= ymin + pad && p.y <= ymax - pad;
    }
    double extent() const { return std::max(xmax - xmin, ymax - ymin); }
};

// Time-independent scalar field sampled on a regular grid, bilinear in (x,y).
// Queries outside the grid clamp to the boundary cell.
struct GridField {
    double x0 = 0.0, y0 = 0.0;
    double dx = 1.0, dy = 1.0;
    int nx = 0, ny = 0;
    std::vector<double> values; // row-major: values[iy * nx + ix]

    double at(int ix, int iy) const { return values[static_cast<size_t>(iy) * nx + ix]; }
    template <class T>
    T sample(const T& x, const T& y) const;
};

// One medium field: analytic expression or gridded samples.
class FieldSpec {
public:
    FieldSpec() = default;
    static FieldSpec expression(Expression e) {
        FieldSpec f;
        f.expr_ = std::move(e);
        return f;
    }
    static FieldSpec grid(GridField g) {
        FieldSpec f;
        f.grid_ = std::move(g);
        f.is_grid_ = true;
        return f;
    }

    bool is_grid() const { return is_grid_; }
    const Expression& expr() const { return expr_; }
    const GridField& grid_data() const { return grid_; }

    template <class T>
    T eval(const T& t, const T& x, const T& y) const {
        return is_grid_ ? grid_.sample(x, y) : expr_.eval(t, x, y);
    }

private:
    Expression expr_;
    GridField grid_;
    bool is_grid_ = false;
};

// Field of velocity ovals over spacetime.  Immutable after construction;
// sampling is pure, so concurrent reads are safe.
class MediumField {
public:
    MediumField() = default;
    MediumField(FieldSpec a, FieldSpec b, FieldSpec theta, FieldSpec wx, FieldSpec wy,
                Domain domain)
        : a_(std::move(a)), b_(std::move(b)), theta_(std::move(theta)), wx_(std::move(wx)),
          wy_(std::move(wy)), domain_(domain) {}

    template <class T>
    EllipseT<T> ellipse(const T& t, const T& x, const T& y) const {
        return {a_.eval(t, x, y), b_.eval(t, x, y), theta_.eval(t, x, y), wx_.eval(t, x, y),
                wy_.eval(t, x, y)};
    }

    ZermeloData zermelo(double t, const Vec2& p) const {
        EllipseT<double> e = ellipse(t, p.x, p.y);
        if (!(e.a > 0.0) || !(e.b > 0.0))
            throw Error(ErrorCode::NonPositiveAxis, "medium produced a non-positive semi-axis");
        return zermelo_from_ellipse_t<double>(e);
    }

    EllipseParams ellipse_at(double t, const Vec2& p) const { return ellipse(t, p.x, p.y); }

    const Domain& domain() const { return domain_; }

    const FieldSpec& field_a() const { return a_; }
    const FieldSpec& field_b() const { return b_; }
    const FieldSpec& field_theta() const { return theta_; }
    const FieldSpec& field_wx() const { return wx_; }
    const FieldSpec& field_wy() const { return wy_; }

private:
    FieldSpec a_, b_, theta_, wx_, wy_;
    Domain domain_;
};

// Convenience for tests: constant or expression-driven media over a box.
MediumField medium_from_expressions(const std::string& a, const std::string& b,
                                    const std::string& theta, const std::string& wx,
                                    const std::string& wy, Domain domain);

} // namespace conewave
