// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cmath>

#include <Eigen/Core>

#include "hosq/errors.hpp"

namespace hosq {

/// Truncated second-order Taylor coefficient set in three variables: value,
/// gradient, and the six independent entries of the symmetric Hessian in
/// the order xx, xy, xz, yy, yz, zz.
///
/// One forward pass through an expression yields exact-to-roundoff first
/// and second derivatives of the expression as written.
struct HyperDual {
    double v = 0.0;
    std::array<double, 3> g{};
    std::array<double, 6> h{};

    static constexpr int h_index(int i, int j) noexcept {
        if (i > j) std::swap(i, j);
        // (0,0)->0 (0,1)->1 (0,2)->2 (1,1)->3 (1,2)->4 (2,2)->5
        return i == 0 ? j : (i == 1 ? 2 + j : 5);
    }

    static HyperDual constant(double c) noexcept {
        HyperDual r;
        r.v = c;
        return r;
    }

    static HyperDual variable(int axis, double value) noexcept {
        HyperDual r;
        r.v = value;
        r.g[axis] = 1.0;
        return r;
    }

    Eigen::Vector3d gradient() const noexcept {
        return {g[0], g[1], g[2]};
    }

    Eigen::Matrix3d hessian() const noexcept {
        Eigen::Matrix3d m;
        m << h[0], h[1], h[2],
             h[1], h[3], h[4],
             h[2], h[4], h[5];
        return m;
    }
};

inline HyperDual operator+(const HyperDual& a, const HyperDual& b) noexcept {
    HyperDual r;
    r.v = a.v + b.v;
    for (int i = 0; i < 3; ++i) r.g[i] = a.g[i] + b.g[i];
    for (int i = 0; i < 6; ++i) r.h[i] = a.h[i] + b.h[i];
    return r;
}

inline HyperDual operator-(const HyperDual& a, const HyperDual& b) noexcept {
    HyperDual r;
    r.v = a.v - b.v;
    for (int i = 0; i < 3; ++i) r.g[i] = a.g[i] - b.g[i];
    for (int i = 0; i < 6; ++i) r.h[i] = a.h[i] - b.h[i];
    return r;
}

inline HyperDual operator-(const HyperDual& a) noexcept {
    HyperDual r;
    r.v = -a.v;
    for (int i = 0; i < 3; ++i) r.g[i] = -a.g[i];
    for (int i = 0; i < 6; ++i) r.h[i] = -a.h[i];
    return r;
}

inline HyperDual operator*(const HyperDual& a, const HyperDual& b) noexcept {
    HyperDual r;
    r.v = a.v * b.v;
    for (int i = 0; i < 3; ++i) r.g[i] = a.g[i] * b.v + a.v * b.g[i];
    for (int i = 0; i < 3; ++i) {
        for (int j = i; j < 3; ++j) {
            const int k = HyperDual::h_index(i, j);
            r.h[k] = a.h[k] * b.v + a.g[i] * b.g[j] + a.g[j] * b.g[i] + a.v * b.h[k];
        }
    }
    return r;
}

inline HyperDual operator/(const HyperDual& a, const HyperDual& b) {
    if (b.v == 0.0) {
        throw EvalError("division by zero");
    }
    HyperDual r;
    r.v = a.v / b.v;
    for (int i = 0; i < 3; ++i) r.g[i] = (a.g[i] - r.v * b.g[i]) / b.v;
    for (int i = 0; i < 3; ++i) {
        for (int j = i; j < 3; ++j) {
            const int k = HyperDual::h_index(i, j);
            r.h[k] = (a.h[k] - r.g[i] * b.g[j] - r.g[j] * b.g[i] - r.v * b.h[k]) / b.v;
        }
    }
    return r;
}

namespace detail {

/// Chain rule for a scalar function given f(u), f'(u), f''(u).
inline HyperDual hd_chain(const HyperDual& u, double f, double fp, double fpp) noexcept {
    HyperDual r;
    r.v = f;
    for (int i = 0; i < 3; ++i) r.g[i] = fp * u.g[i];
    for (int i = 0; i < 3; ++i) {
        for (int j = i; j < 3; ++j) {
            const int k = HyperDual::h_index(i, j);
            r.h[k] = fp * u.h[k] + fpp * u.g[i] * u.g[j];
        }
    }
    return r;
}

}  // namespace detail

inline HyperDual sqrt(const HyperDual& u) {
    if (u.v <= 0.0) {
        throw EvalError("sqrt of a non-positive argument");
    }
    const double s = std::sqrt(u.v);
    return detail::hd_chain(u, s, 0.5 / s, -0.25 / (s * u.v));
}

inline HyperDual sin(const HyperDual& u) noexcept {
    const double s = std::sin(u.v), c = std::cos(u.v);
    return detail::hd_chain(u, s, c, -s);
}

inline HyperDual cos(const HyperDual& u) noexcept {
    const double s = std::sin(u.v), c = std::cos(u.v);
    return detail::hd_chain(u, c, -s, -c);
}

inline HyperDual exp(const HyperDual& u) noexcept {
    const double e = std::exp(u.v);
    return detail::hd_chain(u, e, e, e);
}

inline HyperDual log(const HyperDual& u) {
    if (u.v <= 0.0) {
        throw EvalError("log of a non-positive argument");
    }
    return detail::hd_chain(u, std::log(u.v), 1.0 / u.v, -1.0 / (u.v * u.v));
}

/// Integer power by repeated multiplication; exponent must be >= 0.
inline HyperDual pow_int(const HyperDual& u, long exponent) {
    if (exponent < 0) {
        throw EvalError("pow_int: negative exponent");
    }
    HyperDual result = HyperDual::constant(1.0);
    HyperDual base = u;
    long e = exponent;
    while (e > 0) {
        if (e & 1) result = result * base;
        base = base * base;
        e >>= 1;
    }
    return result;
}

}  // namespace hosq
