#include "conewave/medium.hpp"

#include <algorithm>

namespace conewave {

namespace {

// Clamped cell lookup plus in-cell offset; derivative information flows
// through the offset only (grids are time-independent).
struct CellRef {
    int ix, iy;
    double fx, fy;
};

CellRef locate(const GridField& g, double x, double y) {
    double u = (x - g.x0) / g.dx;
    double v = (y - g.y0) / g.dy;
    u = std::clamp(u, 0.0, static_cast<double>(g.nx - 1));
    v = std::clamp(v, 0.0, static_cast<double>(g.ny - 1));
    int ix = std::min(static_cast<int>(u), g.nx - 2);
    int iy = std::min(static_cast<int>(v), g.ny - 2);
    ix = std::max(ix, 0);
    iy = std::max(iy, 0);
    return {ix, iy, u - ix, v - iy};
}

} // namespace

template <>
double GridField::sample(const double& x, const double& y) const {
    if (nx < 2 || ny < 2) return values.empty() ? 0.0 : values[0];
    const CellRef c = locate(*this, x, y);
    const double v00 = at(c.ix, c.iy), v10 = at(c.ix + 1, c.iy);
    const double v01 = at(c.ix, c.iy + 1), v11 = at(c.ix + 1, c.iy + 1);
    return v00 * (1 - c.fx) * (1 - c.fy) + v10 * c.fx * (1 - c.fy) + v01 * (1 - c.fx) * c.fy +
           v11 * c.fx * c.fy;
}

template <>
Dual3 GridField::sample(const Dual3& x, const Dual3& y) const {
    if (nx < 2 || ny < 2) return Dual3(values.empty() ? 0.0 : values[0]);
    const CellRef c = locate(*this, x.v, y.v);
    const double v00 = at(c.ix, c.iy), v10 = at(c.ix + 1, c.iy);
    const double v01 = at(c.ix, c.iy + 1), v11 = at(c.ix + 1, c.iy + 1);
    Dual3 fx = (x - Dual3(x0 + c.ix * dx)) / Dual3(dx);
    Dual3 fy = (y - Dual3(y0 + c.iy * dy)) / Dual3(dy);
    fx.v = c.fx; // clamp applies to the value, in-cell slope is exact
    fy.v = c.fy;
    const Dual3 one(1.0);
    return Dual3(v00) * (one - fx) * (one - fy) + Dual3(v10) * fx * (one - fy) +
           Dual3(v01) * (one - fx) * fy + Dual3(v11) * fx * fy;
}

MediumField medium_from_expressions(const std::string& a, const std::string& b,
                                    const std::string& theta, const std::string& wx,
                                    const std::string& wy, Domain domain) {
    return MediumField(FieldSpec::expression(Expression(a)), FieldSpec::expression(Expression(b)),
                       FieldSpec::expression(Expression(theta)),
                       FieldSpec::expression(Expression(wx)),
                       FieldSpec::expression(Expression(wy)), domain);
}

} // namespace conewave
