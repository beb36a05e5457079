#include "conewave/expr.hpp"

#include <cctype>
#include <cmath>
#include <vector>

#include "conewave/errors.hpp"

namespace conewave {

namespace {

enum class Op { Add, Sub, Mul, Div, Neg, Sin, Cos, Exp, Min, Max, Const, VarT, VarX, VarY };

} // namespace

struct Expression::Node {
    Op op;
    double value = 0.0; // Op::Const only
    std::shared_ptr<const Node> lhs;
    std::shared_ptr<const Node> rhs;
};

namespace {

using NodePtr = std::shared_ptr<const Expression::Node>;

// non-ADL overloads for the plain-double instantiation
inline double min(double a, double b) { return a <= b ? a : b; }
inline double max(double a, double b) { return a >= b ? a : b; }

NodePtr make_node(Op op, NodePtr lhs = nullptr, NodePtr rhs = nullptr, double value = 0.0) {
    auto n = std::make_shared<Expression::Node>();
    n->op = op;
    n->value = value;
    n->lhs = std::move(lhs);
    n->rhs = std::move(rhs);
    return n;
}

template <class T>
T eval_node(const Expression::Node& n, const T& t, const T& x, const T& y) {
    switch (n.op) {
        case Op::Add: return eval_node(*n.lhs, t, x, y) + eval_node(*n.rhs, t, x, y);
        case Op::Sub: return eval_node(*n.lhs, t, x, y) - eval_node(*n.rhs, t, x, y);
        case Op::Mul: return eval_node(*n.lhs, t, x, y) * eval_node(*n.rhs, t, x, y);
        case Op::Div: return eval_node(*n.lhs, t, x, y) / eval_node(*n.rhs, t, x, y);
        case Op::Neg: return -eval_node(*n.lhs, t, x, y);
        case Op::Sin: return sin(eval_node(*n.lhs, t, x, y));
        case Op::Cos: return cos(eval_node(*n.lhs, t, x, y));
        case Op::Exp: return exp(eval_node(*n.lhs, t, x, y));
        case Op::Min: return min(eval_node(*n.lhs, t, x, y), eval_node(*n.rhs, t, x, y));
        case Op::Max: return max(eval_node(*n.lhs, t, x, y), eval_node(*n.rhs, t, x, y));
        case Op::Const: return T(n.value);
        case Op::VarT: return t;
        case Op::VarX: return x;
        case Op::VarY: return y;
    }
    return T(0.0);
}

struct Parser {
    const std::string& src;
    size_t pos = 0;

    explicit Parser(const std::string& s) : src(s) {}

    [[noreturn]] void fail(const std::string& what, size_t at) const {
        throw ::conewave::ParseError("expression: " + what, 1, static_cast<int>(at) + 1);
    }

    void skip_ws() {
        while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos]))) ++pos;
    }

    bool eat(char c) {
        skip_ws();
        if (pos < src.size() && src[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }

    NodePtr parse() {
        NodePtr e = expr();
        skip_ws();
        if (pos != src.size()) fail("unexpected trailing input", pos);
        return e;
    }

    NodePtr expr() {
        NodePtr lhs = term();
        for (;;) {
            if (eat('+')) lhs = make_node(Op::Add, lhs, term());
            else if (eat('-')) lhs = make_node(Op::Sub, lhs, term());
            else return lhs;
        }
    }

    NodePtr term() {
        NodePtr lhs = factor();
        for (;;) {
            if (eat('*')) lhs = make_node(Op::Mul, lhs, factor());
            else if (eat('/')) lhs = make_node(Op::Div, lhs, factor());
            else return lhs;
        }
    }

    NodePtr factor() {
        if (eat('-')) return make_node(Op::Neg, factor());
        if (eat('+')) return factor();
        return primary();
    }

    NodePtr primary() {
        skip_ws();
        if (pos >= src.size()) fail("unexpected end of expression", pos);
        const char c = src[pos];
        if (c == '(') {
            ++pos;
            NodePtr e = expr();
            if (!eat(')')) fail("expected ')'", pos);
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        if (std::isalpha(static_cast<unsigned char>(c))) return identifier();
        fail(std::string("unexpected character '") + c + "'", pos);
    }

    NodePtr number() {
        const size_t start = pos;
        while (pos < src.size() &&
               (std::isdigit(static_cast<unsigned char>(src[pos])) || src[pos] == '.'))
            ++pos;
        if (pos < src.size() && (src[pos] == 'e' || src[pos] == 'E')) {
            ++pos;
            if (pos < src.size() && (src[pos] == '+' || src[pos] == '-')) ++pos;
            while (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos]))) ++pos;
        }
        try {
            return make_node(Op::Const, nullptr, nullptr, std::stod(src.substr(start, pos - start)));
        } catch (const std::exception&) {
            fail("malformed number", start);
        }
    }

    NodePtr identifier() {
        const size_t start = pos;
        while (pos < src.size() && std::isalpha(static_cast<unsigned char>(src[pos]))) ++pos;
        const std::string name = src.substr(start, pos - start);
        if (name == "t") return make_node(Op::VarT);
        if (name == "x") return make_node(Op::VarX);
        if (name == "y") return make_node(Op::VarY);
        if (name == "pi") return make_node(Op::Const, nullptr, nullptr, M_PI);
        Op op;
        int arity = 1;
        if (name == "sin") op = Op::Sin;
        else if (name == "cos") op = Op::Cos;
        else if (name == "exp") op = Op::Exp;
        else if (name == "min") { op = Op::Min; arity = 2; }
        else if (name == "max") { op = Op::Max; arity = 2; }
        else fail("unknown identifier '" + name + "'", start);
        if (!eat('(')) fail("expected '(' after '" + name + "'", pos);
        NodePtr a = expr();
        NodePtr b;
        if (arity == 2) {
            if (!eat(',')) fail("expected ',' in '" + name + "'", pos);
            b = expr();
        }
        if (!eat(')')) fail("expected ')'", pos);
        return make_node(op, a, b);
    }
};

} // namespace

Expression::Expression(std::string source) : source_(std::move(source)) {
    Parser p(source_);
    root_ = p.parse();
}

double Expression::eval(double t, double x, double y) const {
    return eval_node<double>(*root_, t, x, y);
}

Dual3 Expression::eval(const Dual3& t, const Dual3& x, const Dual3& y) const {
    return eval_node<Dual3>(*root_, t, x, y);
}

} // namespace conewave
