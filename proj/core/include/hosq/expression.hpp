// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <memory>
#include <string>
#include <string_view>

#include <Eigen/Core>

#include "hosq/hyperdual.hpp"
#include "hosq/surfaces.hpp"

namespace hosq {

/// Immutable expression tree over the variables x, y, z.
///
/// Grammar: + - * / with the usual precedence, unary minus, ^ with a
/// constant integer exponent >= 0 binding tighter than unary minus, and the
/// functions sqrt, sin, cos, exp, log. Whitespace is insignificant.
class Expr {
public:
    /// Throws ParseError (with byte offset) on malformed input.
    static Expr parse(std::string_view text);

    /// Plain double evaluation. Throws EvalError on undefined operations.
    double eval(const Eigen::Vector3d& p) const;

    /// Value, gradient and Hessian in one forward pass.
    HyperDual eval_hyperdual(const Eigen::Vector3d& p) const;

    /// Parenthesized rendering that re-parses to an equivalent tree.
    std::string to_string() const;

    struct Node;

private:
    explicit Expr(std::shared_ptr<const Node> root) : root_(std::move(root)) {}

    std::shared_ptr<const Node> root_;
};

/// Implicit surface phi(x,y,z) = 0 given as expression text; derivatives
/// are exact to roundoff via hyper-dual forward evaluation.
class ExpressionSurface final : public ImplicitSurface {
public:
    explicit ExpressionSurface(Expr expr);
    explicit ExpressionSurface(std::string_view text);

    double value(const Eigen::Vector3d& p) const override;
    Eigen::Vector3d gradient(const Eigen::Vector3d& p) const override;
    std::string name() const override { return "expression"; }

    const Expr& expr() const noexcept { return expr_; }

protected:
    Eigen::Matrix3d hessian_raw(const Eigen::Vector3d& p) const override;

private:
    Expr expr_;
};

}  // namespace hosq
