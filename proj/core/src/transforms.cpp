// SPDX-License-Identifier: Apache-2.0
#include "hosq/transforms.hpp"

#include <Eigen/Geometry>

#include <algorithm>
#include <cmath>

namespace hosq {

SimplexPoint squeeze(const SquarePoint& p) noexcept {
    const double x1 = (p.x + 1.0) / 2.0;
    const double x2 = (p.y + 1.0) / 2.0;
    const double s = x1 * x2 / 2.0;
    return {x1 - s, x2 - s};
}

SquarePoint unsqueeze(const SimplexPoint& q) {
    constexpr double slack = 1e-14;
    if (q.u < -slack || q.v < -slack || q.u + q.v > 1.0 + slack) {
        throw DomainError("unsqueeze: point outside the standard simplex");
    }
    const double d = q.u - q.v;
    const double radicand = std::max(d * d + 4.0 * (1.0 - q.u - q.v), 0.0);
    const double root = std::sqrt(radicand);
    return {1.0 + d - root, 1.0 - d - root};
}

SimplexPoint duffy(const SquarePoint& p) noexcept {
    return {0.25 * (1.0 + p.x) * (1.0 - p.y), (1.0 + p.y) / 2.0};
}

Eigen::Matrix2d squeeze_jacobian(const SquarePoint& p) noexcept {
    const double x1 = (p.x + 1.0) / 2.0;
    const double x2 = (p.y + 1.0) / 2.0;
    Eigen::Matrix2d jac;
    jac << (1.0 - x2 / 2.0) / 2.0, -x1 / 4.0,
           -x2 / 4.0,              (1.0 - x1 / 2.0) / 2.0;
    return jac;
}

AffineTriangleMap::AffineTriangleMap(const Eigen::Vector3d& v0,
                                     const Eigen::Vector3d& v1,
                                     const Eigen::Vector3d& v2)
    : v0_(v0), v1_(v1), v2_(v2) {
    const Eigen::Vector3d e1 = v1 - v0;
    const Eigen::Vector3d e2 = v2 - v0;
    const double doubled_area = e1.cross(e2).norm();
    if (doubled_area <= 1e-16 * e1.norm() * e2.norm()) {
        throw DomainError("AffineTriangleMap: collinear vertices");
    }
}

}  // namespace hosq
