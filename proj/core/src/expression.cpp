// SPDX-License-Identifier: Apache-2.0
#include "hosq/expression.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <utility>
#include <vector>

namespace hosq {

namespace {

enum class OpCode {
    Number,
    Variable,  // payload 0..2 for x, y, z
    Add,
    Sub,
    Mul,
    Div,
    Neg,
    PowInt,    // payload: exponent
    Sqrt,
    Sin,
    Cos,
    Exp,
    Log,
};

const char* op_name(OpCode op) {
    switch (op) {
        case OpCode::Add: return "+";
        case OpCode::Sub: return "-";
        case OpCode::Mul: return "*";
        case OpCode::Div: return "/";
        case OpCode::Neg: return "-";
        case OpCode::PowInt: return "^";
        case OpCode::Sqrt: return "sqrt";
        case OpCode::Sin: return "sin";
        case OpCode::Cos: return "cos";
        case OpCode::Exp: return "exp";
        case OpCode::Log: return "log";
        default: return "?";
    }
}

}  // namespace

struct Expr::Node {
    OpCode op;
    double number = 0.0;
    long payload = 0;  // variable axis or integer exponent
    std::shared_ptr<const Node> lhs;
    std::shared_ptr<const Node> rhs;
};

namespace {

using NodePtr = std::shared_ptr<const Expr::Node>;

NodePtr make_node(OpCode op, NodePtr lhs = nullptr, NodePtr rhs = nullptr,
                  double number = 0.0, long payload = 0) {
    auto n = std::make_shared<Expr::Node>();
    n->op = op;
    n->number = number;
    n->payload = payload;
    n->lhs = std::move(lhs);
    n->rhs = std::move(rhs);
    return n;
}

// ---------------------------------------------------------------------------
// Recursive-descent parser. Precedence: ^  >  unary -  >  * /  >  + -.
// ^ takes a constant integer exponent >= 0 and is right-associative.
// ---------------------------------------------------------------------------
class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    NodePtr run() {
        if (text_.size() > 64 * 1024) {
            throw ParseError("expression larger than 64 KiB", 0);
        }
        NodePtr root = parse_sum();
        skip_ws();
        if (pos_ != text_.size()) {
            throw ParseError("expected operator or end of input", pos_);
        }
        return root;
    }

private:
    void skip_ws() {
        while (pos_ < text_.size() &&
               std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
    }

    bool accept(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    NodePtr parse_sum() {
        NodePtr lhs = parse_product();
        for (;;) {
            if (accept('+')) {
                lhs = make_node(OpCode::Add, lhs, parse_product());
            } else if (accept('-')) {
                lhs = make_node(OpCode::Sub, lhs, parse_product());
            } else {
                return lhs;
            }
        }
    }

    NodePtr parse_product() {
        NodePtr lhs = parse_unary();
        for (;;) {
            if (accept('*')) {
                lhs = make_node(OpCode::Mul, lhs, parse_unary());
            } else if (accept('/')) {
                lhs = make_node(OpCode::Div, lhs, parse_unary());
            } else {
                return lhs;
            }
        }
    }

    NodePtr parse_unary() {
        if (accept('-')) {
            return make_node(OpCode::Neg, parse_unary());
        }
        return parse_power();
    }

    NodePtr parse_power() {
        NodePtr base = parse_atom();
        if (accept('^')) {
            return make_node(OpCode::PowInt, base, nullptr, 0.0, parse_exponent());
        }
        return base;
    }

    long parse_exponent() {
        skip_ws();
        const std::size_t start = pos_;
        if (pos_ >= text_.size() ||
            !std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            throw ParseError("expected a nonnegative integer exponent", pos_);
        }
        long value = 0;
        while (pos_ < text_.size() &&
               std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            value = value * 10 + (text_[pos_] - '0');
            if (value > 1'000'000) {
                throw ParseError("integer exponent too large", start);
            }
            ++pos_;
        }
        // Right-associative exponent chains fold to an integer power tower.
        if (accept('^')) {
            const long upper = parse_exponent();
            long folded = 1;
            for (long i = 0; i < upper; ++i) {
                folded *= value;
                if (folded > 1'000'000) {
                    throw ParseError("integer exponent too large", start);
                }
            }
            value = folded;
        }
        return value;
    }

    NodePtr parse_atom() {
        skip_ws();
        if (pos_ >= text_.size()) {
            throw ParseError("expected operand", pos_);
        }
        const char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            NodePtr inner = parse_sum();
            if (!accept(')')) {
                throw ParseError("expected ')'", pos_);
            }
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            return parse_number();
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            return parse_ident();
        }
        throw ParseError("expected operand", pos_);
    }

    NodePtr parse_number() {
        const std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isdigit(static_cast<unsigned char>(text_[pos_])) ||
                text_[pos_] == '.')) {
            ++pos_;
        }
        if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
            std::size_t probe = pos_ + 1;
            if (probe < text_.size() && (text_[probe] == '+' || text_[probe] == '-')) {
                ++probe;
            }
            if (probe < text_.size() &&
                std::isdigit(static_cast<unsigned char>(text_[probe]))) {
                pos_ = probe;
                while (pos_ < text_.size() &&
                       std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                    ++pos_;
                }
            }
        }
        double value = 0.0;
        const auto [ptr, ec] = std::from_chars(text_.data() + start,
                                               text_.data() + pos_, value);
        if (ec != std::errc{} || ptr != text_.data() + pos_) {
            throw ParseError("malformed number", start);
        }
        return make_node(OpCode::Number, nullptr, nullptr, value);
    }

    NodePtr parse_ident() {
        const std::size_t start = pos_;
        while (pos_ < text_.size() &&
               std::isalpha(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
        const std::string_view ident = text_.substr(start, pos_ - start);
        if (ident == "x") return make_node(OpCode::Variable, nullptr, nullptr, 0.0, 0);
        if (ident == "y") return make_node(OpCode::Variable, nullptr, nullptr, 0.0, 1);
        if (ident == "z") return make_node(OpCode::Variable, nullptr, nullptr, 0.0, 2);

        OpCode fn;
        if (ident == "sqrt") fn = OpCode::Sqrt;
        else if (ident == "sin") fn = OpCode::Sin;
        else if (ident == "cos") fn = OpCode::Cos;
        else if (ident == "exp") fn = OpCode::Exp;
        else if (ident == "log") fn = OpCode::Log;
        else throw ParseError("unknown identifier '" + std::string(ident) + "'", start);

        if (!accept('(')) {
            throw ParseError("expected '(' after function name", pos_);
        }
        NodePtr arg = parse_sum();
        if (!accept(')')) {
            throw ParseError("expected ')'", pos_);
        }
        return make_node(fn, std::move(arg));
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

// ---------------------------------------------------------------------------
// Evaluation
// ---------------------------------------------------------------------------
template <typename T>
T eval_node(const Expr::Node& n, const T* vars);

double checked_div(double a, double b) {
    if (b == 0.0) throw EvalError("division by zero");
    return a / b;
}

double checked_sqrt(double a) {
    if (a < 0.0) throw EvalError("sqrt of a negative argument");
    return std::sqrt(a);
}

double checked_log(double a) {
    if (a <= 0.0) throw EvalError("log of a non-positive argument");
    return std::log(a);
}

double pow_int_double(double base, long exponent) {
    double result = 1.0;
    double b = base;
    long e = exponent;
    while (e > 0) {
        if (e & 1) result *= b;
        b *= b;
        e >>= 1;
    }
    return result;
}

template <>
double eval_node<double>(const Expr::Node& n, const double* vars) {
    switch (n.op) {
        case OpCode::Number: return n.number;
        case OpCode::Variable: return vars[n.payload];
        case OpCode::Add: return eval_node(*n.lhs, vars) + eval_node(*n.rhs, vars);
        case OpCode::Sub: return eval_node(*n.lhs, vars) - eval_node(*n.rhs, vars);
        case OpCode::Mul: return eval_node(*n.lhs, vars) * eval_node(*n.rhs, vars);
        case OpCode::Div: return checked_div(eval_node(*n.lhs, vars), eval_node(*n.rhs, vars));
        case OpCode::Neg: return -eval_node(*n.lhs, vars);
        case OpCode::PowInt: return pow_int_double(eval_node(*n.lhs, vars), n.payload);
        case OpCode::Sqrt: return checked_sqrt(eval_node(*n.lhs, vars));
        case OpCode::Sin: return std::sin(eval_node(*n.lhs, vars));
        case OpCode::Cos: return std::cos(eval_node(*n.lhs, vars));
        case OpCode::Exp: return std::exp(eval_node(*n.lhs, vars));
        case OpCode::Log: return checked_log(eval_node(*n.lhs, vars));
    }
    throw EvalError("corrupt expression node");
}

template <>
HyperDual eval_node<HyperDual>(const Expr::Node& n, const HyperDual* vars) {
    switch (n.op) {
        case OpCode::Number: return HyperDual::constant(n.number);
        case OpCode::Variable: return vars[n.payload];
        case OpCode::Add: return eval_node(*n.lhs, vars) + eval_node(*n.rhs, vars);
        case OpCode::Sub: return eval_node(*n.lhs, vars) - eval_node(*n.rhs, vars);
        case OpCode::Mul: return eval_node(*n.lhs, vars) * eval_node(*n.rhs, vars);
        case OpCode::Div: return eval_node(*n.lhs, vars) / eval_node(*n.rhs, vars);
        case OpCode::Neg: return -eval_node(*n.lhs, vars);
        case OpCode::PowInt: return pow_int(eval_node(*n.lhs, vars), n.payload);
        case OpCode::Sqrt: return sqrt(eval_node(*n.lhs, vars));
        case OpCode::Sin: return sin(eval_node(*n.lhs, vars));
        case OpCode::Cos: return cos(eval_node(*n.lhs, vars));
        case OpCode::Exp: return exp(eval_node(*n.lhs, vars));
        case OpCode::Log: return log(eval_node(*n.lhs, vars));
    }
    throw EvalError("corrupt expression node");
}

void print_node(const Expr::Node& n, std::string& out) {
    switch (n.op) {
        case OpCode::Number: {
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.17g", n.number);
            out += buf;
            return;
        }
        case OpCode::Variable:
            out += static_cast<char>('x' + n.payload);
            return;
        case OpCode::Add:
        case OpCode::Sub:
        case OpCode::Mul:
        case OpCode::Div:
            out += '(';
            print_node(*n.lhs, out);
            out += op_name(n.op);
            print_node(*n.rhs, out);
            out += ')';
            return;
        case OpCode::Neg:
            out += "(-";
            print_node(*n.lhs, out);
            out += ')';
            return;
        case OpCode::PowInt:
            out += '(';
            print_node(*n.lhs, out);
            out += '^';
            out += std::to_string(n.payload);
            out += ')';
            return;
        default:
            out += op_name(n.op);
            out += '(';
            print_node(*n.lhs, out);
            out += ')';
            return;
    }
}

}  // namespace

Expr Expr::parse(std::string_view text) {
    return Expr(Parser(text).run());
}

double Expr::eval(const Eigen::Vector3d& p) const {
    const double vars[3] = {p.x(), p.y(), p.z()};
    return eval_node<double>(*root_, vars);
}

HyperDual Expr::eval_hyperdual(const Eigen::Vector3d& p) const {
    const HyperDual vars[3] = {
        HyperDual::variable(0, p.x()),
        HyperDual::variable(1, p.y()),
        HyperDual::variable(2, p.z()),
    };
    return eval_node<HyperDual>(*root_, vars);
}

std::string Expr::to_string() const {
    std::string out;
    print_node(*root_, out);
    return out;
}

ExpressionSurface::ExpressionSurface(Expr expr) : expr_(std::move(expr)) {
    regularity = 8;
}

ExpressionSurface::ExpressionSurface(std::string_view text)
    : ExpressionSurface(Expr::parse(text)) {}

double ExpressionSurface::value(const Eigen::Vector3d& p) const {
    return expr_.eval(p);
}

Eigen::Vector3d ExpressionSurface::gradient(const Eigen::Vector3d& p) const {
    return expr_.eval_hyperdual(p).gradient();
}

Eigen::Matrix3d ExpressionSurface::hessian_raw(const Eigen::Vector3d& p) const {
    return expr_.eval_hyperdual(p).hessian();
}

}  // namespace hosq
