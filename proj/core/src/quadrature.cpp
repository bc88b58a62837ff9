// SPDX-License-Identifier: Apache-2.0
#include "hosq/quadrature.hpp"

#include <cmath>
#include <numbers>

#include "hosq/spectral.hpp"

namespace hosq {

QuadRule1D cc_rule(int n) {
    using std::numbers::pi;
    QuadRule1D rule;
    rule.order = n;
    rule.nodes = cl_nodes(n).nodes;
    rule.weights.assign(n + 1, 0.0);

    if (n == 1) {
        rule.weights = {1.0, 1.0};
        return rule;
    }

    auto theta = [n](int k) { return k * pi / n; };
    std::vector<double> v(n - 1, 1.0);
    if (n % 2 == 0) {
        rule.weights[0] = 1.0 / (static_cast<double>(n) * n - 1.0);
        rule.weights[n] = rule.weights[0];
        for (int k = 1; k < n / 2; ++k) {
            for (int i = 1; i < n; ++i) {
                v[i - 1] -= 2.0 * std::cos(2.0 * k * theta(i)) / (4.0 * k * k - 1.0);
            }
        }
        for (int i = 1; i < n; ++i) {
            v[i - 1] -= std::cos(n * theta(i)) / (static_cast<double>(n) * n - 1.0);
        }
    } else {
        rule.weights[0] = 1.0 / (static_cast<double>(n) * n);
        rule.weights[n] = rule.weights[0];
        for (int k = 1; k <= (n - 1) / 2; ++k) {
            for (int i = 1; i < n; ++i) {
                v[i - 1] -= 2.0 * std::cos(2.0 * k * theta(i)) / (4.0 * k * k - 1.0);
            }
        }
    }
    for (int i = 1; i < n; ++i) {
        rule.weights[i] = 2.0 * v[i - 1] / n;
    }
    return rule;
}

namespace {

// Legendre P_m and its derivative via the three-term recurrence.
struct LegendreEval {
    double p;   // P_m(t)
    double dp;  // P_m'(t)
};

LegendreEval legendre(int m, double t) {
    double p0 = 1.0;
    double p1 = t;
    for (int l = 1; l < m; ++l) {
        const double p2 = ((2.0 * l + 1.0) * t * p1 - l * p0) / (l + 1.0);
        p0 = p1;
        p1 = p2;
    }
    const double dp = m * (t * p1 - p0) / (t * t - 1.0);
    return {p1, dp};
}

}  // namespace

QuadRule1D gl_rule(int n) {
    using std::numbers::pi;
    if (n < 1) {
        throw DomainError("gl_rule: order must be at least 1");
    }
    const int m = n + 1;  // number of points = number of Legendre roots
    QuadRule1D rule;
    rule.order = n;
    rule.nodes.resize(m);
    rule.weights.resize(m);

    for (int i = 0; i < m; ++i) {
        // Chebyshev-type initial guess, descending in i.
        double t = std::cos(pi * (i + 0.75) / (m + 0.5));
        LegendreEval ev{};
        bool converged = false;
        for (int iter = 0; iter < 100; ++iter) {
            ev = legendre(m, t);
            const double dt = ev.p / ev.dp;
            t -= dt;
            if (std::abs(dt) <= 1e-15 * (1.0 + std::abs(t))) {
                converged = true;
                break;
            }
        }
        if (!converged) {
            throw ConvergenceError("gl_rule: Newton iteration for root " +
                                   std::to_string(i) + " did not converge");
        }
        ev = legendre(m, t);
        rule.nodes[i] = t;
        rule.weights[i] = 2.0 / ((1.0 - t * t) * ev.dp * ev.dp);
    }
    return rule;
}

QuadRule1D make_rule(RuleKind kind, int n) {
    return kind == RuleKind::ClenshawCurtis ? cc_rule(n) : gl_rule(n);
}

QuadRule2D tensor_rule(const QuadRule1D& rule) {
    const std::size_t m = rule.nodes.size();
    QuadRule2D r2;
    r2.order = rule.order;
    r2.points.resize(m * m);
    r2.weights.resize(m * m);
    for (std::size_t a1 = 0; a1 < m; ++a1) {
        for (std::size_t a2 = 0; a2 < m; ++a2) {
            r2.points[a1 * m + a2] = {rule.nodes[a1], rule.nodes[a2]};
            r2.weights[a1 * m + a2] = rule.weights[a1] * rule.weights[a2];
        }
    }
    return r2;
}

}  // namespace hosq
