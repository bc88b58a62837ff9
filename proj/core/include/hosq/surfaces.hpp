// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <memory>
#include <optional>
#include <string>

#include <Eigen/Core>

#include "hosq/errors.hpp"

namespace hosq {

/// Level-set description of a closed surface S = {phi = 0} with analytic
/// first and second derivatives of the level function.
///
/// Descriptors are immutable after construction and safe to share across
/// threads.
class ImplicitSurface {
public:
    virtual ~ImplicitSurface() = default;

    virtual double value(const Eigen::Vector3d& p) const = 0;
    virtual Eigen::Vector3d gradient(const Eigen::Vector3d& p) const = 0;

    /// Symmetrized Hessian: the raw evaluation averaged with its transpose.
    Eigen::Matrix3d hessian(const Eigen::Vector3d& p) const {
        const Eigen::Matrix3d h = hessian_raw(p);
        return 0.5 * (h + h.transpose());
    }

    virtual std::string name() const = 0;

    /// Smoothness-class metadata (the level function is C^regularity).
    int regularity = 6;
    /// Relative residual target for closest-point projection.
    double projection_tolerance = 1e-13;
    int max_projection_iterations = 50;
    /// Closed-form surface area, when one exists.
    std::optional<double> reference_area;
    std::optional<int> euler_characteristic;

protected:
    virtual Eigen::Matrix3d hessian_raw(const Eigen::Vector3d& p) const = 0;
};

/// phi = |p|^2 - radius^2.
class Sphere final : public ImplicitSurface {
public:
    explicit Sphere(double radius);

    double value(const Eigen::Vector3d& p) const override;
    Eigen::Vector3d gradient(const Eigen::Vector3d& p) const override;
    std::string name() const override { return "sphere"; }
    double radius() const noexcept { return radius_; }

protected:
    Eigen::Matrix3d hessian_raw(const Eigen::Vector3d& p) const override;

private:
    double radius_;
};

/// phi = (sqrt(x^2+y^2) - major)^2 + z^2 - minor^2. The gradient is
/// undefined on the z-axis; evaluation there throws DomainError.
class Torus final : public ImplicitSurface {
public:
    Torus(double major, double minor);

    double value(const Eigen::Vector3d& p) const override;
    Eigen::Vector3d gradient(const Eigen::Vector3d& p) const override;
    std::string name() const override { return "torus"; }
    double major() const noexcept { return major_; }
    double minor() const noexcept { return minor_; }

protected:
    Eigen::Matrix3d hessian_raw(const Eigen::Vector3d& p) const override;

private:
    double major_;
    double minor_;
};

/// phi = (x - z^2)^2 + y^2 + z^2 - 1. Genus 0.
class DziukSurface final : public ImplicitSurface {
public:
    DziukSurface();

    double value(const Eigen::Vector3d& p) const override;
    Eigen::Vector3d gradient(const Eigen::Vector3d& p) const override;
    std::string name() const override { return "dziuk"; }

protected:
    Eigen::Matrix3d hessian_raw(const Eigen::Vector3d& p) const override;
};

/// phi = ((x^2+y^2)^2 - x^2 + y^2)^2 + z^2 - a^2. Genus 2 for small a != 0.
class DoubleTorus final : public ImplicitSurface {
public:
    explicit DoubleTorus(double a = 0.2);

    double value(const Eigen::Vector3d& p) const override;
    Eigen::Vector3d gradient(const Eigen::Vector3d& p) const override;
    std::string name() const override { return "double_torus"; }
    double a() const noexcept { return a_; }

protected:
    Eigen::Matrix3d hessian_raw(const Eigen::Vector3d& p) const override;

private:
    double a_;
};

/// Adjugate (transposed cofactor matrix); equals det(m) * m^-1 for
/// invertible m but stays finite for singular m.
Eigen::Matrix3d adjugate(const Eigen::Matrix3d& m) noexcept;

/// Closest-point projection onto the zero level set.
///
/// Damped Newton on the stationarity system y = x - lambda*grad(y),
/// phi(y) = 0, seeded by the first-order step x - phi*grad/|grad|^2.
/// The result y satisfies |phi(y)| <= projection_tolerance * (1 + |x|) and
/// x - y is parallel to grad(y) within 1e-8 (up to the floating-point
/// direction resolution when |x - y| is at roundoff scale).
///
/// Throws ConvergenceError after max_projection_iterations and DomainError
/// when the gradient vanishes along the way. Only points inside the
/// projection neighborhood of S are guaranteed to converge.
Eigen::Vector3d closest_point(const ImplicitSurface& s, const Eigen::Vector3d& x);

/// Gauss curvature of the level set through y (expects |phi(y)| <= 1e-10):
/// K = grad^T adj(H) grad / |grad|^4. Throws DomainError when the gradient
/// vanishes.
double gauss_curvature(const ImplicitSurface& s, const Eigen::Vector3d& y);

/// Configuration record for constructing a surface; mirrors the CLI's JSON
/// "surface" object.
struct SurfaceSpec {
    enum class Kind { Sphere, Torus, Dziuk, DoubleTorus, Expression };

    Kind kind = Kind::Sphere;
    double radius = 1.0;   ///< sphere
    double major = 2.0;    ///< torus R
    double minor = 1.0;    ///< torus r
    double a = 0.2;        ///< double torus parameter
    std::string expression;
};

/// Throws DomainError on invalid parameters (radius <= 0, major <= minor,
/// a == 0, empty expression).
std::unique_ptr<ImplicitSurface> make_surface(const SurfaceSpec& spec);

}  // namespace hosq
