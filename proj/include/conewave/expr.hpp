#pragma once

#include <memory>
#include <string>

#include "conewave/dual.hpp"

namespace conewave {

// Arithmetic mini-language for medium fields over the variables t, x, y:
// +, -, *, /, unary minus, parentheses, sin, cos, exp, min, max, numeric
// literals and the constant pi.  Evaluates on doubles and on dual numbers.
class Expression {
public:
    struct Node;

    Expression() = default;
    explicit Expression(std::string source); // throws ParseError

    double eval(double t, double x, double y) const;
    Dual3 eval(const Dual3& t, const Dual3& x, const Dual3& y) const;

    bool empty() const { return root_ == nullptr; }
    const std::string& source() const { return source_; }

private:
    std::shared_ptr<const Node> root_;
    std::string source_;
};

} // namespace conewave
