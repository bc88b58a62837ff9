// SPDX-License-Identifier: Apache-2.0
#include "hosq/surfaces.hpp"

#include <cmath>

#include <Eigen/Dense>

#include "hosq/expression.hpp"

namespace hosq {

Sphere::Sphere(double radius) : radius_(radius) {
    if (!(radius > 0.0)) {
        throw DomainError("Sphere: radius must be positive");
    }
    reference_area = 4.0 * M_PI * radius * radius;
    euler_characteristic = 2;
}

double Sphere::value(const Eigen::Vector3d& p) const {
    return p.squaredNorm() - radius_ * radius_;
}

Eigen::Vector3d Sphere::gradient(const Eigen::Vector3d& p) const {
    return 2.0 * p;
}

Eigen::Matrix3d Sphere::hessian_raw(const Eigen::Vector3d&) const {
    return 2.0 * Eigen::Matrix3d::Identity();
}

Torus::Torus(double major, double minor) : major_(major), minor_(minor) {
    if (!(major > minor && minor > 0.0)) {
        throw DomainError("Torus: requires major > minor > 0");
    }
    reference_area = 4.0 * M_PI * M_PI * major * minor;
    euler_characteristic = 0;
}

double Torus::value(const Eigen::Vector3d& p) const {
    const double rho = std::hypot(p.x(), p.y());
    const double d = rho - major_;
    return d * d + p.z() * p.z() - minor_ * minor_;
}

Eigen::Vector3d Torus::gradient(const Eigen::Vector3d& p) const {
    const double rho = std::hypot(p.x(), p.y());
    if (rho < 1e-14) {
        throw DomainError("Torus: gradient undefined on the z-axis");
    }
    const double f = 1.0 - major_ / rho;
    return {2.0 * p.x() * f, 2.0 * p.y() * f, 2.0 * p.z()};
}

Eigen::Matrix3d Torus::hessian_raw(const Eigen::Vector3d& p) const {
    const double rho = std::hypot(p.x(), p.y());
    if (rho < 1e-14) {
        throw DomainError("Torus: hessian undefined on the z-axis");
    }
    const double r3 = rho * rho * rho;
    Eigen::Matrix3d h = Eigen::Matrix3d::Zero();
    h(0, 0) = 2.0 - 2.0 * major_ * p.y() * p.y() / r3;
    h(1, 1) = 2.0 - 2.0 * major_ * p.x() * p.x() / r3;
    h(0, 1) = h(1, 0) = 2.0 * major_ * p.x() * p.y() / r3;
    h(2, 2) = 2.0;
    return h;
}

DziukSurface::DziukSurface() {
    euler_characteristic = 2;
    regularity = 8;
}

double DziukSurface::value(const Eigen::Vector3d& p) const {
    const double t = p.x() - p.z() * p.z();
    return t * t + p.y() * p.y() + p.z() * p.z() - 1.0;
}

Eigen::Vector3d DziukSurface::gradient(const Eigen::Vector3d& p) const {
    const double t = p.x() - p.z() * p.z();
    return {2.0 * t, 2.0 * p.y(), -4.0 * p.z() * t + 2.0 * p.z()};
}

Eigen::Matrix3d DziukSurface::hessian_raw(const Eigen::Vector3d& p) const {
    const double t = p.x() - p.z() * p.z();
    Eigen::Matrix3d h = Eigen::Matrix3d::Zero();
    h(0, 0) = 2.0;
    h(0, 2) = h(2, 0) = -4.0 * p.z();
    h(1, 1) = 2.0;
    h(2, 2) = -4.0 * t + 8.0 * p.z() * p.z() + 2.0;
    return h;
}

DoubleTorus::DoubleTorus(double a) : a_(a) {
    if (a == 0.0) {
        throw DomainError("DoubleTorus: parameter a must be nonzero");
    }
    euler_characteristic = -2;
    regularity = 8;
}

double DoubleTorus::value(const Eigen::Vector3d& p) const {
    const double q = p.x() * p.x() + p.y() * p.y();
    const double w = q * q - p.x() * p.x() + p.y() * p.y();
    return w * w + p.z() * p.z() - a_ * a_;
}

Eigen::Vector3d DoubleTorus::gradient(const Eigen::Vector3d& p) const {
    const double q = p.x() * p.x() + p.y() * p.y();
    const double w = q * q - p.x() * p.x() + p.y() * p.y();
    const double wx = 4.0 * q * p.x() - 2.0 * p.x();
    const double wy = 4.0 * q * p.y() + 2.0 * p.y();
    return {2.0 * w * wx, 2.0 * w * wy, 2.0 * p.z()};
}

Eigen::Matrix3d DoubleTorus::hessian_raw(const Eigen::Vector3d& p) const {
    const double x = p.x(), y = p.y();
    const double q = x * x + y * y;
    const double w = q * q - x * x + y * y;
    const double wx = 4.0 * q * x - 2.0 * x;
    const double wy = 4.0 * q * y + 2.0 * y;
    const double wxx = 4.0 * q + 8.0 * x * x - 2.0;
    const double wyy = 4.0 * q + 8.0 * y * y + 2.0;
    const double wxy = 8.0 * x * y;
    Eigen::Matrix3d h = Eigen::Matrix3d::Zero();
    h(0, 0) = 2.0 * wx * wx + 2.0 * w * wxx;
    h(1, 1) = 2.0 * wy * wy + 2.0 * w * wyy;
    h(0, 1) = h(1, 0) = 2.0 * wx * wy + 2.0 * w * wxy;
    h(2, 2) = 2.0;
    return h;
}

Eigen::Matrix3d adjugate(const Eigen::Matrix3d& m) noexcept {
    Eigen::Matrix3d adj;
    adj.row(0) = m.col(1).cross(m.col(2));
    adj.row(1) = m.col(2).cross(m.col(0));
    adj.row(2) = m.col(0).cross(m.col(1));
    return adj;
}

namespace {

constexpr double kGradFloor = 1e-12;

Eigen::Vector3d checked_gradient(const ImplicitSurface& s, const Eigen::Vector3d& y) {
    Eigen::Vector3d g = s.gradient(y);
    if (g.norm() < kGradFloor) {
        throw DomainError("closest_point: gradient vanished during iteration");
    }
    return g;
}

// First-order level-set descent y <- y - phi * grad / |grad|^2.
Eigen::Vector3d descend_to_level_set(const ImplicitSurface& s, Eigen::Vector3d y,
                                     double phi_tol, int max_steps) {
    for (int i = 0; i < max_steps; ++i) {
        const double phi = s.value(y);
        if (std::abs(phi) <= phi_tol) break;
        const Eigen::Vector3d g = checked_gradient(s, y);
        y -= phi * g / g.squaredNorm();
    }
    return y;
}

struct ProjectionCheck {
    const ImplicitSurface& s;
    Eigen::Vector3d x;
    double scale;
    double phi_tol;

    // Converged means: on the surface, and x - y parallel to the gradient.
    // The tangential part of x - y cannot be resolved below roundoff of the
    // ambient coordinates, hence the absolute slack on top of the 1e-8
    // angular tolerance.
    bool operator()(const Eigen::Vector3d& y) const {
        const double phi = s.value(y);
        const Eigen::Vector3d g = checked_gradient(s, y);
        const Eigen::Vector3d u = x - y;
        const double tangential = u.cross(g).norm() / g.norm();
        return std::abs(phi) <= phi_tol &&
               tangential <= 1e-8 * u.norm() + 1e-14 * scale;
    }
};

}  // namespace

Eigen::Vector3d closest_point(const ImplicitSurface& s, const Eigen::Vector3d& x) {
    const double scale = 1.0 + x.norm();
    const double phi_tol = s.projection_tolerance * scale;
    const ProjectionCheck converged{s, x, scale, phi_tol};

    const Eigen::Vector3d g0 = s.gradient(x);
    const double g0n2 = g0.squaredNorm();
    if (g0n2 < kGradFloor * kGradFloor) {
        throw DomainError("closest_point: gradient vanishes at the seed point");
    }

    // Damped Newton on the stationarity system, seeded by the first-order step.
    double lambda = s.value(x) / g0n2;
    Eigen::Vector3d y = x - lambda * g0;

    bool stalled = false;
    for (int iter = 0; iter < s.max_projection_iterations && !stalled; ++iter) {
        if (converged(y)) return y;

        const double phi = s.value(y);
        const Eigen::Vector3d g = checked_gradient(s, y);
        const Eigen::Matrix3d h = s.hessian(y);

        Eigen::Vector4d residual;
        residual.head<3>() = y - x + lambda * g;
        residual[3] = phi;

        Eigen::Matrix4d jac = Eigen::Matrix4d::Zero();
        jac.topLeftCorner<3, 3>() = Eigen::Matrix3d::Identity() + lambda * h;
        jac.topRightCorner<3, 1>() = g;
        jac.bottomLeftCorner<1, 3>() = g.transpose();
        const Eigen::Vector4d step = jac.fullPivLu().solve(-residual);

        // Halve the step until the stationarity residual decreases.
        const double merit0 = residual.norm();
        double t = 1.0;
        bool accepted = false;
        Eigen::Vector3d y_next = y + step.head<3>();
        double lambda_next = lambda + step[3];
        for (int halving = 0; halving < 20; ++halving) {
            Eigen::Vector4d trial;
            trial.head<3>() = y_next - x + lambda_next * s.gradient(y_next);
            trial[3] = s.value(y_next);
            if (trial.norm() < merit0) {
                accepted = true;
                break;
            }
            t *= 0.5;
            y_next = y + t * step.head<3>();
            lambda_next = lambda + t * step[3];
        }
        y = y_next;
        lambda = lambda_next;
        // Newton jams when I + lambda*H turns singular near the focal set.
        stalled = !accepted && iter > 4;
    }

    // Fallback for near-focal points: descend to the surface, then slide
    // along the tangent plane toward x. Linear but monotone in distance.
    y = descend_to_level_set(s, x, 0.5 * phi_tol, 60);
    for (int iter = 0; iter < 4 * s.max_projection_iterations; ++iter) {
        if (converged(y)) return y;
        const Eigen::Vector3d g = checked_gradient(s, y);
        const Eigen::Vector3d u = x - y;
        const Eigen::Vector3d slide = u - (u.dot(g) / g.squaredNorm()) * g;
        const double dist0 = u.norm();
        double t = 1.0;
        Eigen::Vector3d y_next = y;
        for (int halving = 0; halving < 30; ++halving) {
            y_next = descend_to_level_set(s, y + t * slide, 0.5 * phi_tol, 30);
            if ((x - y_next).norm() <= dist0) break;
            t *= 0.5;
        }
        y = y_next;
    }
    throw ConvergenceError("closest_point: no convergence within " +
                           std::to_string(s.max_projection_iterations) +
                           " Newton iterations plus slide fallback");
}

double gauss_curvature(const ImplicitSurface& s, const Eigen::Vector3d& y) {
    const Eigen::Vector3d g = s.gradient(y);
    const double g2 = g.squaredNorm();
    if (g2 < 1e-24) {
        throw DomainError("gauss_curvature: gradient vanishes");
    }
    const Eigen::Matrix3d adj = adjugate(s.hessian(y));
    return g.dot(adj * g) / (g2 * g2);
}

std::unique_ptr<ImplicitSurface> make_surface(const SurfaceSpec& spec) {
    switch (spec.kind) {
        case SurfaceSpec::Kind::Sphere:
            return std::make_unique<Sphere>(spec.radius);
        case SurfaceSpec::Kind::Torus:
            return std::make_unique<Torus>(spec.major, spec.minor);
        case SurfaceSpec::Kind::Dziuk:
            return std::make_unique<DziukSurface>();
        case SurfaceSpec::Kind::DoubleTorus:
            return std::make_unique<DoubleTorus>(spec.a);
        case SurfaceSpec::Kind::Expression:
            if (spec.expression.empty()) {
                throw DomainError("make_surface: empty expression");
            }
            return std::make_unique<ExpressionSurface>(spec.expression);
    }
    throw DomainError("make_surface: unknown surface kind");
}

}  // namespace hosq
