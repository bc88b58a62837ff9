// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>
#include <vector>

#include <Eigen/Core>

#include "hosq/errors.hpp"

namespace hosq {

/// Chebyshev-Lobatto nodes cos(k*pi/n), k = 0..n, in descending order.
/// The endpoints are snapped to +-1 and, for even n, the midpoint to 0.
struct ChebGrid1D {
    int order = 0;              ///< polynomial degree n; the grid has n+1 nodes
    std::vector<double> nodes;  ///< nodes[0] = 1, nodes[n] = -1, strictly decreasing
};

/// Tensor Chebyshev-Lobatto grid on [-1,1]^2.
///
/// The flat index is l = a1*(n+1) + a2, first coordinate major, so the point
/// at l is (nodes[a1], nodes[a2]). Every module uses this flattening.
struct ChebGrid2D {
    int order = 0;
    std::vector<double> nodes;  ///< shared 1-d node vector, length n+1

    std::size_t size() const noexcept {
        return static_cast<std::size_t>(order + 1) * (order + 1);
    }
    Eigen::Vector2d point(std::size_t l) const {
        const std::size_t m = static_cast<std::size_t>(order) + 1;
        return {nodes[l / m], nodes[l % m]};
    }
};

/// Throws DomainError for n < 1.
ChebGrid1D cl_nodes(int n);

ChebGrid2D cl_grid_2d(int n);

/// Chebyshev-Lobatto spectral differentiation matrix.
///
/// The diagonal is the negative sum of the off-diagonal row entries, which
/// forces exact zero row sums (constants differentiate to zero).
Eigen::MatrixXd diff_matrix(int n);

/// Partial-derivative operators on the flattened tensor grid:
/// dx = D (x) I differentiates the first coordinate, dy = I (x) D the second.
struct DiffOps {
    int order = 0;
    Eigen::MatrixXd dx;
    Eigen::MatrixXd dy;
};

DiffOps tensor_diff(int n);

/// Closed-form barycentric weights for the Chebyshev-Lobatto nodes:
/// alternating signs, halved at the two endpoints.
std::vector<double> barycentric_weights(int n);

/// Cardinal-function values c[j] = l_j(t) in barycentric form. Returns an
/// exact delta vector when t coincides with a node bitwise.
Eigen::VectorXd interp_coeffs_1d(const ChebGrid1D& grid, double t);

/// Evaluate the tensor-product interpolant of `values` (grid flattening)
/// at (x,y). Reproduces stored values exactly at grid nodes.
double interp_eval(std::span<const double> values, const ChebGrid2D& grid,
                   double x, double y);

}  // namespace hosq
