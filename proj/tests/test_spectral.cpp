// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "hosq/spectral.hpp"

using hosq::ChebGrid2D;
using hosq::DiffOps;

namespace {

// Samples f over the 2-d grid in the module's flattening order.
template <typename F>
std::vector<double> sample_grid(const ChebGrid2D& grid, F&& f) {
    std::vector<double> values(grid.size());
    for (std::size_t l = 0; l < grid.size(); ++l) {
        const Eigen::Vector2d p = grid.point(l);
        values[l] = f(p.x(), p.y());
    }
    return values;
}

Eigen::VectorXd to_vec(const std::vector<double>& v) {
    return Eigen::Map<const Eigen::VectorXd>(v.data(), v.size());
}

}  // namespace

TEST_SUITE_BEGIN("spectral");

TEST_CASE("chebyshev-lobatto nodes") {
    const auto g2 = hosq::cl_nodes(2);
    CHECK(g2.nodes[0] == 1.0);
    CHECK(g2.nodes[1] == 0.0);
    CHECK(g2.nodes[2] == -1.0);

    const auto g1 = hosq::cl_nodes(1);
    CHECK(g1.nodes[0] == 1.0);
    CHECK(g1.nodes[1] == -1.0);

    const auto g4 = hosq::cl_nodes(4);
    CHECK(g4.nodes[1] == doctest::Approx(0.7071067811865476).epsilon(1e-15));

    CHECK_THROWS_AS(hosq::cl_nodes(0), hosq::DomainError);

    for (int n = 1; n <= 33; ++n) {
        const auto g = hosq::cl_nodes(n);
        for (int k = 0; k < n; ++k) {
            CHECK(g.nodes[k] > g.nodes[k + 1]);
        }
    }
}

TEST_CASE("differentiation matrix basics") {
    const Eigen::MatrixXd d1 = hosq::diff_matrix(1);
    CHECK(d1(0, 0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(d1(0, 1) == doctest::Approx(-0.5).epsilon(1e-15));
    CHECK(d1(1, 0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(d1(1, 1) == doctest::Approx(-0.5).epsilon(1e-15));

    // derivative of x^3 reproduced at all nodes
    const auto grid = hosq::cl_nodes(8);
    const Eigen::MatrixXd d8 = hosq::diff_matrix(8);
    Eigen::VectorXd samples(9), expected(9);
    for (int i = 0; i <= 8; ++i) {
        samples[i] = std::pow(grid.nodes[i], 3);
        expected[i] = 3.0 * grid.nodes[i] * grid.nodes[i];
    }
    CHECK(((d8 * samples) - expected).cwiseAbs().maxCoeff() < 1e-12);

    for (int n = 2; n <= 32; ++n) {
        const Eigen::MatrixXd d = hosq::diff_matrix(n);
        CHECK(d.rowwise().sum().cwiseAbs().maxCoeff() < 1e-13);
    }
}

TEST_CASE("tensor operators differentiate bilinear data exactly") {
    const DiffOps ops = hosq::tensor_diff(2);
    const ChebGrid2D grid = hosq::cl_grid_2d(2);

    const auto xy = to_vec(sample_grid(grid, [](double x, double y) { return x * y; }));
    const auto y_samples =
        to_vec(sample_grid(grid, [](double, double y) { return y; }));
    const auto x_samples =
        to_vec(sample_grid(grid, [](double x, double) { return x; }));
    CHECK((ops.dx * xy - y_samples).cwiseAbs().maxCoeff() < 1e-13);
    CHECK((ops.dy * xy - x_samples).cwiseAbs().maxCoeff() < 1e-13);

    const auto ones = to_vec(sample_grid(grid, [](double, double) { return 1.0; }));
    CHECK((ops.dx * ones).cwiseAbs().maxCoeff() < 1e-14);

    const DiffOps ops6 = hosq::tensor_diff(6);
    CHECK((ops6.dx * ops6.dy - ops6.dy * ops6.dx).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("monomial differentiation exactness up to the grid order") {
    std::mt19937 rng(4242);
    for (const int n : {3, 6, 11, 16, 20}) {
        const DiffOps ops = hosq::tensor_diff(n);
        const ChebGrid2D grid = hosq::cl_grid_2d(n);
        std::uniform_int_distribution<int> pick(0, n);
        for (int trial = 0; trial < 6; ++trial) {
            const int a = pick(rng), b = pick(rng);
            const auto f = [a, b](double x, double y) {
                return std::pow(x, a) * std::pow(y, b);
            };
            const auto dfdx = [a, b](double x, double y) {
                return a == 0 ? 0.0 : a * std::pow(x, a - 1) * std::pow(y, b);
            };
            const auto dfdy = [a, b](double x, double y) {
                return b == 0 ? 0.0 : b * std::pow(x, a) * std::pow(y, b - 1);
            };
            const auto fv = to_vec(sample_grid(grid, f));
            CHECK((ops.dx * fv - to_vec(sample_grid(grid, dfdx)))
                      .cwiseAbs()
                      .maxCoeff() < 1e-11);
            CHECK((ops.dy * fv - to_vec(sample_grid(grid, dfdy)))
                      .cwiseAbs()
                      .maxCoeff() < 1e-11);
        }
    }
}

TEST_CASE("flattening: dx acts on the row index, dy on the column index") {
    const int n = 5;
    const DiffOps ops = hosq::tensor_diff(n);
    const Eigen::MatrixXd d = hosq::diff_matrix(n);
    std::mt19937 rng(31);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    Eigen::MatrixXd m(n + 1, n + 1);
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= n; ++j) m(i, j) = unit(rng);

    Eigen::VectorXd flat(m.size());
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= n; ++j) flat[i * (n + 1) + j] = m(i, j);

    const Eigen::MatrixXd dm = d * m;        // differentiate first coordinate
    const Eigen::MatrixXd md = m * d.transpose();  // second coordinate
    const Eigen::VectorXd dx_flat = ops.dx * flat;
    const Eigen::VectorXd dy_flat = ops.dy * flat;
    for (int i = 0; i <= n; ++i) {
        for (int j = 0; j <= n; ++j) {
            CHECK(dx_flat[i * (n + 1) + j] == doctest::Approx(dm(i, j)).epsilon(1e-13));
            CHECK(dy_flat[i * (n + 1) + j] == doctest::Approx(md(i, j)).epsilon(1e-13));
        }
    }
}

TEST_CASE("interpolation: partition of unity and node exactness") {
    const ChebGrid2D grid = hosq::cl_grid_2d(5);
    const auto ones = sample_grid(grid, [](double, double) { return 1.0; });
    std::mt19937 rng(8);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    for (int i = 0; i < 25; ++i) {
        CHECK(hosq::interp_eval(ones, grid, unit(rng), unit(rng)) ==
              doctest::Approx(1.0).epsilon(1e-14));
    }

    std::vector<double> values(grid.size());
    for (std::size_t l = 0; l < grid.size(); ++l) values[l] = 0.1 * l - 3.0;
    for (std::size_t l = 0; l < grid.size(); ++l) {
        const Eigen::Vector2d p = grid.point(l);
        CHECK(hosq::interp_eval(values, grid, p.x(), p.y()) == values[l]);
    }
}

TEST_CASE("interpolation reproduces polynomials in the tensor space") {
    const ChebGrid2D grid = hosq::cl_grid_2d(3);
    const auto f = [](double x, double y) { return x * x * y; };
    const auto values = sample_grid(grid, f);
    std::mt19937 rng(99);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    for (int i = 0; i < 20; ++i) {
        const double x = unit(rng), y = unit(rng);
        CHECK(std::abs(hosq::interp_eval(values, grid, x, y) - f(x, y)) < 1e-13);
    }

    // random member of the full tensor space at order 6
    const ChebGrid2D g6 = hosq::cl_grid_2d(6);
    Eigen::MatrixXd coeff(7, 7);
    for (int i = 0; i < 7; ++i)
        for (int j = 0; j < 7; ++j) coeff(i, j) = unit(rng);
    const auto poly = [&coeff](double x, double y) {
        double acc = 0.0;
        for (int i = 0; i < 7; ++i)
            for (int j = 0; j < 7; ++j)
                acc += coeff(i, j) * std::pow(x, i) * std::pow(y, j);
        return acc;
    };
    const auto pv = sample_grid(g6, poly);
    for (int i = 0; i < 30; ++i) {
        const double x = unit(rng), y = unit(rng);
        CHECK(std::abs(hosq::interp_eval(pv, g6, x, y) - poly(x, y)) < 1e-12);
    }
}

TEST_CASE("interpolation error for exp(x+y) decreases with order") {
    std::mt19937 rng(512);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    const auto f = [](double x, double y) { return std::exp(x + y); };
    double previous = 1e300;
    for (const int n : {4, 6, 8, 10}) {
        const ChebGrid2D grid = hosq::cl_grid_2d(n);
        const auto values = sample_grid(grid, f);
        double worst = 0.0;
        std::mt19937 local(512);
        for (int i = 0; i < 200; ++i) {
            const double x = unit(local), y = unit(local);
            worst = std::max(worst,
                             std::abs(hosq::interp_eval(values, grid, x, y) - f(x, y)));
        }
        CHECK((worst < previous || worst <= 1e-14));
        previous = worst;
    }
    CHECK(previous <= 1e-9);
}

TEST_SUITE_END();
