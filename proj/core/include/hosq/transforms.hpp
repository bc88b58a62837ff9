// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Core>

#include "hosq/errors.hpp"

namespace hosq {

/// Point in the reference square [-1,1]^2.
struct SquarePoint {
    double x = 0.0;
    double y = 0.0;
};

/// Point in the standard 2-simplex {u >= 0, v >= 0, u + v <= 1}.
struct SimplexPoint {
    double u = 0.0;
    double v = 0.0;
};

/// Bilinear homeomorphism from [-1,1]^2 onto the standard simplex.
///
/// The corner (1,1) maps to the hypotenuse midpoint (1/2,1/2); the other
/// three corners map to the simplex corners. Total on the closed square.
SimplexPoint squeeze(const SquarePoint& p) noexcept;

/// Inverse of squeeze.
///
/// The radicand (u-v)^2 + 4(1-u-v) is clamped at zero so that points on the
/// hypotenuse with a -1e-16-scale roundoff defect stay evaluable. Throws
/// DomainError when q lies outside the simplex by more than 1e-14.
SquarePoint unsqueeze(const SimplexPoint& q);

/// Square-to-simplex collapse mapping the entire edge y = 1 to the vertex
/// (0,1). Not injective; provided for contrast experiments only, never as
/// part of the integration pipeline.
SimplexPoint duffy(const SquarePoint& p) noexcept;

/// Jacobian of squeeze with respect to the square coordinates (x,y),
/// including the 1/2 factors from the internal rescale to the unit square.
///
/// det = (1 - x1/2 - x2/2)/4 with x1 = (x+1)/2, x2 = (y+1)/2; nonnegative on
/// the closed square and zero only at the squeezed corner (1,1).
Eigen::Matrix2d squeeze_jacobian(const SquarePoint& p) noexcept;

/// Affine map from the standard simplex onto a flat triangle in R^3, fixed
/// by the images of (0,0), (1,0) and (0,1).
class AffineTriangleMap {
public:
    /// Throws DomainError when the vertices are collinear.
    AffineTriangleMap(const Eigen::Vector3d& v0, const Eigen::Vector3d& v1,
                      const Eigen::Vector3d& v2);

    Eigen::Vector3d apply(const SimplexPoint& q) const noexcept {
        return v0_ + q.u * (v1_ - v0_) + q.v * (v2_ - v0_);
    }

    const Eigen::Vector3d& v0() const noexcept { return v0_; }
    const Eigen::Vector3d& v1() const noexcept { return v1_; }
    const Eigen::Vector3d& v2() const noexcept { return v2_; }

private:
    Eigen::Vector3d v0_, v1_, v2_;
};

}  // namespace hosq
