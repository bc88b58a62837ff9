// SPDX-License-Identifier: Apache-2.0
#include "hosq/spectral.hpp"

#include <cmath>
#include <numbers>

namespace hosq {

ChebGrid1D cl_nodes(int n) {
    if (n < 1) {
        throw DomainError("cl_nodes: order must be at least 1");
    }
    ChebGrid1D grid;
    grid.order = n;
    grid.nodes.resize(n + 1);
    for (int k = 0; k <= n; ++k) {
        grid.nodes[k] = std::cos(k * std::numbers::pi / n);
    }
    grid.nodes[0] = 1.0;
    grid.nodes[n] = -1.0;
    if (n % 2 == 0) {
        grid.nodes[n / 2] = 0.0;
    }
    return grid;
}

ChebGrid2D cl_grid_2d(int n) {
    ChebGrid1D g1 = cl_nodes(n);
    return ChebGrid2D{n, std::move(g1.nodes)};
}

Eigen::MatrixXd diff_matrix(int n) {
    const ChebGrid1D grid = cl_nodes(n);
    const auto& x = grid.nodes;
    Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n + 1, n + 1);
    for (int i = 0; i <= n; ++i) {
        const double ci = (i == 0 || i == n) ? 2.0 : 1.0;
        // Diagonal = negative row sum, accumulated with Neumaier
        // compensation so constants differentiate to zero at roundoff.
        double row_sum = 0.0;
        double compensation = 0.0;
        for (int j = 0; j <= n; ++j) {
            if (j == i) continue;
            const double cj = (j == 0 || j == n) ? 2.0 : 1.0;
            const double sign = ((i + j) % 2 == 0) ? 1.0 : -1.0;
            d(i, j) = (ci / cj) * sign / (x[i] - x[j]);
            const double updated = row_sum + d(i, j);
            if (std::abs(row_sum) >= std::abs(d(i, j))) {
                compensation += (row_sum - updated) + d(i, j);
            } else {
                compensation += (d(i, j) - updated) + row_sum;
            }
            row_sum = updated;
        }
        d(i, i) = -(row_sum + compensation);
    }
    return d;
}

DiffOps tensor_diff(int n) {
    const Eigen::MatrixXd d = diff_matrix(n);
    const int m = n + 1;
    DiffOps ops;
    ops.order = n;
    ops.dx = Eigen::MatrixXd::Zero(m * m, m * m);
    ops.dy = Eigen::MatrixXd::Zero(m * m, m * m);
    for (int a1 = 0; a1 < m; ++a1) {
        for (int a2 = 0; a2 < m; ++a2) {
            const int row = a1 * m + a2;
            for (int b = 0; b < m; ++b) {
                ops.dx(row, b * m + a2) = d(a1, b);
                ops.dy(row, a1 * m + b) = d(a2, b);
            }
        }
    }
    return ops;
}

std::vector<double> barycentric_weights(int n) {
    std::vector<double> w(n + 1);
    for (int j = 0; j <= n; ++j) {
        w[j] = (j % 2 == 0) ? 1.0 : -1.0;
    }
    w[0] *= 0.5;
    w[n] *= 0.5;
    return w;
}

Eigen::VectorXd interp_coeffs_1d(const ChebGrid1D& grid, double t) {
    const int n = grid.order;
    Eigen::VectorXd c = Eigen::VectorXd::Zero(n + 1);
    for (int j = 0; j <= n; ++j) {
        if (t == grid.nodes[j]) {
            c[j] = 1.0;
            return c;
        }
    }
    const std::vector<double> w = barycentric_weights(n);
    double denom = 0.0;
    for (int j = 0; j <= n; ++j) {
        c[j] = w[j] / (t - grid.nodes[j]);
        denom += c[j];
    }
    c /= denom;
    return c;
}

double interp_eval(std::span<const double> values, const ChebGrid2D& grid,
                   double x, double y) {
    const int m = grid.order + 1;
    const ChebGrid1D g1{grid.order, grid.nodes};
    const Eigen::VectorXd cx = interp_coeffs_1d(g1, x);
    const Eigen::VectorXd cy = interp_coeffs_1d(g1, y);
    double acc = 0.0;
    for (int a1 = 0; a1 < m; ++a1) {
        if (cx[a1] == 0.0) continue;
        double inner = 0.0;
        for (int a2 = 0; a2 < m; ++a2) {
            inner += cy[a2] * values[static_cast<std::size_t>(a1) * m + a2];
        }
        acc += cx[a1] * inner;
    }
    return acc;
}

}  // namespace hosq
