// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include <Eigen/Core>

#include "hosq/errors.hpp"

namespace hosq {

enum class RuleKind {
    ClenshawCurtis,
    GaussLegendre,
};

/// Quadrature rule on [-1,1] with n+1 nodes and positive weights.
struct QuadRule1D {
    int order = 0;
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// Tensor rule on [-1,1]^2 with the same flattening as ChebGrid2D:
/// point l = (nodes1d[a1], nodes1d[a2]), weight w[a1]*w[a2].
struct QuadRule2D {
    int order = 0;
    std::vector<Eigen::Vector2d> points;
    std::vector<double> weights;
};

/// Clenshaw-Curtis rule at the Chebyshev-Lobatto nodes.
///
/// The node vector is shared bitwise with cl_nodes(n), so samples taken at
/// interpolation nodes can be fed to the rule with no re-evaluation.
/// Weights come from the explicit O(n^2) cosine-sum formula; the rule is
/// exact for polynomials of degree <= n.
QuadRule1D cc_rule(int n);

/// (n+1)-point Gauss-Legendre rule (exact for degree <= 2n+1), computed by
/// Newton iteration on the Legendre polynomial with Chebyshev-type initial
/// guesses. Throws ConvergenceError if a root fails to settle within 100
/// iterations, which signals an implementation bug rather than bad input.
QuadRule1D gl_rule(int n);

QuadRule1D make_rule(RuleKind kind, int n);

QuadRule2D tensor_rule(const QuadRule1D& rule);

}  // namespace hosq
