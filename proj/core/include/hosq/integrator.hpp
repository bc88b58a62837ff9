// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <limits>
#include <span>
#include <vector>

#include "hosq/mesh.hpp"
#include "hosq/quadrature.hpp"
#include "hosq/spectral.hpp"
#include "hosq/surfaces.hpp"
#include "hosq/transforms.hpp"

namespace hosq {

/// Geometry samples of one curved element: images of the order-k tensor
/// grid under squeeze, the triangle's affine map, and (when a surface is
/// attached) closest-point projection. Uses the ChebGrid2D flattening.
struct ElementGeometry {
    int element = 0;
    int order = 0;
    std::vector<Eigen::Vector3d> nodes;  ///< (k+1)^2 points in R^3
};

/// Scalar integrand evaluated at on-surface points.
using Integrand = std::function<double(const Eigen::Vector3d&)>;

Integrand constant_one();

/// f(p) = Gauss curvature of the surface at p. Integrating it over a closed
/// surface yields 2*pi times the Euler characteristic.
Integrand gauss_curvature_integrand(const ImplicitSurface& s);

/// Sample the order-k geometry of triangle `element`. A null surface keeps
/// the flat triangle (no projection). Projection failures are rethrown with
/// the element index in the message.
ElementGeometry build_element(const TriangleMesh& mesh, int element,
                              const ImplicitSurface* surface, int order);

/// One term of the quadrature sum: spectrally differentiate the three
/// coordinate sample vectors, form the first fundamental form E, F, G per
/// node, and sum w * f * sqrt(max(E*G - F^2, 0)) over the rule points.
///
/// When the rule's points coincide bitwise with the geometry grid (the
/// Clenshaw-Curtis default at matching order) everything is evaluated
/// natively at the samples; otherwise positions and Jacobians are evaluated
/// through the barycentric tensor interpolant, which reproduces the
/// degree-k geometry polynomial exactly.
double element_integral(const ElementGeometry& geom, const Integrand& f,
                        const QuadRule2D& rule, const DiffOps& ops);

struct IntegralResult {
    double value = 0.0;
    std::vector<double> per_element;
    int order = 0;
    int rule_order = 0;
    double elapsed_seconds = 0.0;
};

struct IntegrateOptions {
    RuleKind rule = RuleKind::ClenshawCurtis;
    int rule_order = -1;  ///< negative: match the geometry order
    int threads = 1;      ///< 0: hardware concurrency
};

/// Sum element_integral over all elements. Elements may be processed in
/// parallel; per-element values land in an index-addressed buffer and the
/// total is their correctly rounded exact sum, so the result is bit
/// identical across thread counts and element orderings.
///
/// Throws DomainError when the mesh fails validation; the first failing
/// element's error (lowest index) is propagated otherwise.
IntegralResult integrate(const TriangleMesh& mesh, const ImplicitSurface* surface,
                         const Integrand& f, int order,
                         const IntegrateOptions& options = {});

struct ConvergenceEntry {
    int degree = 0;
    double value = 0.0;
    double reference = 0.0;
    double error = 0.0;  ///< relative when reference != 0, absolute otherwise
    double runtime_ms = 0.0;
};

/// Least-squares fit of error ~ c * b^(-degree) on the log scale.
struct RateFit {
    double c = std::numeric_limits<double>::quiet_NaN();
    double b = std::numeric_limits<double>::quiet_NaN();
    int points_used = 0;
};

/// Entries with error <= floor (machine-precision plateau) are excluded;
/// fewer than two usable points leave the fit as NaN.
RateFit fit_exponential_rate(std::span<const ConvergenceEntry> entries,
                             double floor_error = 100.0 * 2.220446049250313e-16);

struct ConvergenceReport {
    std::vector<ConvergenceEntry> entries;
    RateFit fit;
};

/// Run integrate once per degree (ascending) and record errors against the
/// reference value; reference == 0 switches to absolute errors.
ConvergenceReport convergence_study(const TriangleMesh& mesh,
                                    const ImplicitSurface* surface,
                                    const Integrand& f,
                                    std::span<const int> degrees,
                                    double reference,
                                    const IntegrateOptions& options = {});

/// Correctly rounded sum of a double sequence (Shewchuk partials). The
/// result does not depend on the order of the inputs.
double exact_sum(std::span<const double> values);

}  // namespace hosq
