// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <cstring>

#include <Eigen/Dense>

#include "doctest.h"
#include "hosq/quadrature.hpp"
#include "hosq/spectral.hpp"

using hosq::QuadRule1D;
using hosq::QuadRule2D;

namespace {

double apply(const QuadRule1D& rule, double (*f)(double)) {
    double acc = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        acc += rule.weights[i] * f(rule.nodes[i]);
    }
    return acc;
}

double moment(const QuadRule1D& rule, int k) {
    double acc = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        acc += rule.weights[i] * std::pow(rule.nodes[i], k);
    }
    return acc;
}

double exact_moment(int k) { return k % 2 == 1 ? 0.0 : 2.0 / (k + 1); }

}  // namespace

TEST_SUITE_BEGIN("quadrature");

TEST_CASE("clenshaw-curtis n=2 equals the moment-exactness solution") {
    // independent oracle: solve the 3x3 system sum w_i x_i^k = exact moment
    // for the nodes {1, 0, -1}
    Eigen::Matrix3d vander;
    Eigen::Vector3d rhs;
    const double nodes[3] = {1.0, 0.0, -1.0};
    for (int k = 0; k < 3; ++k) {
        for (int i = 0; i < 3; ++i) vander(k, i) = std::pow(nodes[i], k);
        rhs[k] = exact_moment(k);
    }
    const Eigen::Vector3d w = vander.fullPivLu().solve(rhs);

    const QuadRule1D rule = hosq::cc_rule(2);
    for (int i = 0; i < 3; ++i) {
        CHECK(rule.weights[i] == doctest::Approx(w[i]).epsilon(1e-14));
    }
    CHECK(rule.weights[1] == doctest::Approx(4.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("clenshaw-curtis weights sum to 2 and stay positive") {
    for (int n = 1; n <= 64; ++n) {
        const QuadRule1D rule = hosq::cc_rule(n);
        double sum = 0.0;
        for (const double w : rule.weights) {
            CHECK(w > 0.0);
            sum += w;
        }
        CHECK(std::abs(sum - 2.0) < 1e-13);
    }
}

TEST_CASE("clenshaw-curtis degree-n exactness") {
    const QuadRule1D r8 = hosq::cc_rule(8);
    CHECK(std::abs(moment(r8, 8) - 2.0 / 9.0) < 1e-14);

    for (const int n : {2, 5, 8, 13, 20, 32}) {
        const QuadRule1D rule = hosq::cc_rule(n);
        for (int k = 0; k <= n; ++k) {
            CHECK(std::abs(moment(rule, k) - exact_moment(k)) < 1e-13);
        }
    }
}

TEST_CASE("clenshaw-curtis nodes are the interpolation nodes, bitwise") {
    for (const int n : {1, 2, 7, 16, 33}) {
        const QuadRule1D rule = hosq::cc_rule(n);
        const auto grid = hosq::cl_nodes(n);
        REQUIRE(rule.nodes.size() == grid.nodes.size());
        CHECK(std::memcmp(rule.nodes.data(), grid.nodes.data(),
                          rule.nodes.size() * sizeof(double)) == 0);
    }
}

TEST_CASE("gauss-legendre basics") {
    const QuadRule1D r1 = hosq::gl_rule(1);
    CHECK(std::abs(std::abs(r1.nodes[0]) - 0.5773502691896257) < 1e-14);
    CHECK(std::abs(std::abs(r1.nodes[1]) - 0.5773502691896257) < 1e-14);
    CHECK(r1.weights[0] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(r1.weights[1] == doctest::Approx(1.0).epsilon(1e-14));

    for (int n = 1; n <= 64; ++n) {
        const QuadRule1D rule = hosq::gl_rule(n);
        double sum = 0.0;
        for (const double w : rule.weights) {
            CHECK(w > 0.0);
            sum += w;
        }
        CHECK(std::abs(sum - 2.0) < 1e-13);
    }

    const QuadRule1D r3 = hosq::gl_rule(3);
    CHECK(std::abs(moment(r3, 6) - 2.0 / 7.0) < 1e-14);
}

TEST_CASE("gauss-legendre degree 2n+1 exactness") {
    for (const int n : {1, 2, 4, 9, 17, 32}) {
        const QuadRule1D rule = hosq::gl_rule(n);
        for (int k = 0; k <= 2 * n + 1; ++k) {
            CHECK(std::abs(moment(rule, k) - exact_moment(k)) < 1e-13);
        }
    }
}

TEST_CASE("gauss-legendre stays convergent through n=128") {
    CHECK_NOTHROW(hosq::gl_rule(128));
}

TEST_CASE("tensor rule integrates separable polynomials") {
    const QuadRule2D cc4 = hosq::tensor_rule(hosq::cc_rule(4));
    double ones = 0.0, x2y2 = 0.0, odd = 0.0;
    for (std::size_t l = 0; l < cc4.points.size(); ++l) {
        const auto& p = cc4.points[l];
        ones += cc4.weights[l];
        x2y2 += cc4.weights[l] * p.x() * p.x() * p.y() * p.y();
        odd += cc4.weights[l] * p.x();
    }
    CHECK(std::abs(ones - 4.0) < 1e-12);
    CHECK(std::abs(x2y2 - 4.0 / 9.0) < 1e-13);
    CHECK(std::abs(odd) < 1e-14);
}

TEST_CASE("smooth-function convergence of clenshaw-curtis") {
    const double exact = std::atan(4.0) / 2.0;
    double previous = 1e300;
    for (const int n : {8, 16, 32, 64}) {
        const QuadRule1D rule = hosq::cc_rule(n);
        const double value =
            apply(rule, [](double x) { return 1.0 / (1.0 + 16.0 * x * x); });
        const double err = std::abs(value - exact);
        CHECK(err < previous);
        previous = err;
    }
    CHECK(previous < 1e-8);
}

TEST_SUITE_END();
