// SPDX-License-Identifier: Apache-2.0
#include "hosq/integrator.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

namespace hosq {

Integrand constant_one() {
    return [](const Eigen::Vector3d&) { return 1.0; };
}

Integrand gauss_curvature_integrand(const ImplicitSurface& s) {
    return [&s](const Eigen::Vector3d& p) { return gauss_curvature(s, p); };
}

ElementGeometry build_element(const TriangleMesh& mesh, int element,
                              const ImplicitSurface* surface, int order) {
    if (element < 0 || element >= mesh.triangle_count()) {
        throw DomainError("build_element: element index out of range");
    }
    if (order < 1) {
        throw DomainError("build_element: order must be at least 1");
    }
    const auto& tri = mesh.triangles[element];
    const AffineTriangleMap affine(mesh.vertices[tri[0]], mesh.vertices[tri[1]],
                                   mesh.vertices[tri[2]]);
    const ChebGrid2D grid = cl_grid_2d(order);

    ElementGeometry geom;
    geom.element = element;
    geom.order = order;
    geom.nodes.resize(grid.size());
    for (std::size_t l = 0; l < grid.size(); ++l) {
        const Eigen::Vector2d p = grid.point(l);
        const Eigen::Vector3d flat = affine.apply(squeeze({p.x(), p.y()}));
        if (surface == nullptr) {
            geom.nodes[l] = flat;
        } else {
            try {
                geom.nodes[l] = closest_point(*surface, flat);
            } catch (const ConvergenceError& e) {
                throw ConvergenceError("element " + std::to_string(element) +
                                       ": " + e.what());
            } catch (const DomainError& e) {
                throw DomainError("element " + std::to_string(element) + ": " +
                                  e.what());
            }
        }
    }
    return geom;
}

namespace {

bool rule_matches_grid(const QuadRule2D& rule, const ChebGrid2D& grid) {
    if (rule.points.size() != grid.size()) return false;
    for (std::size_t l = 0; l < rule.points.size(); ++l) {
        const Eigen::Vector2d g = grid.point(l);
        if (rule.points[l].x() != g.x() || rule.points[l].y() != g.y()) {
            return false;
        }
    }
    return true;
}

double metric_factor(const Eigen::Vector3d& j1, const Eigen::Vector3d& j2) {
    const double e = j1.squaredNorm();
    const double g = j2.squaredNorm();
    const double f = j1.dot(j2);
    return std::sqrt(std::max(e * g - f * f, 0.0));
}

}  // namespace

double element_integral(const ElementGeometry& geom, const Integrand& f,
                        const QuadRule2D& rule, const DiffOps& ops) {
    if (ops.order != geom.order) {
        throw DomainError("element_integral: operator order does not match geometry");
    }
    const std::size_t count = geom.nodes.size();
    Eigen::VectorXd coord[3];
    for (int c = 0; c < 3; ++c) {
        coord[c].resize(count);
        for (std::size_t l = 0; l < count; ++l) coord[c][l] = geom.nodes[l][c];
    }
    Eigen::VectorXd du[3], dv[3];
    for (int c = 0; c < 3; ++c) {
        du[c] = ops.dx * coord[c];
        dv[c] = ops.dy * coord[c];
    }

    const ChebGrid2D grid = cl_grid_2d(geom.order);
    double acc = 0.0;

    if (rule_matches_grid(rule, grid)) {
        // Quadrature points are the geometry samples; no interpolation.
        for (std::size_t l = 0; l < rule.points.size(); ++l) {
            const Eigen::Vector3d j1(du[0][l], du[1][l], du[2][l]);
            const Eigen::Vector3d j2(dv[0][l], dv[1][l], dv[2][l]);
            acc += rule.weights[l] * f(geom.nodes[l]) * metric_factor(j1, j2);
        }
        return acc;
    }

    // Off-grid rule: evaluate the geometry interpolant and its exact
    // derivative interpolants at the rule points.
    const ChebGrid1D g1{grid.order, grid.nodes};
    const std::size_t m = static_cast<std::size_t>(rule.order) + 1;
    std::vector<Eigen::VectorXd> cx(m), cy(m);
    for (std::size_t i = 0; i < m; ++i) {
        cx[i] = interp_coeffs_1d(g1, rule.points[i * m].x());
        cy[i] = interp_coeffs_1d(g1, rule.points[i].y());
    }
    const int kp1 = geom.order + 1;
    auto tensor_eval = [&](const Eigen::VectorXd& values, std::size_t a1,
                           std::size_t a2) {
        double total = 0.0;
        for (int i = 0; i < kp1; ++i) {
            if (cx[a1][i] == 0.0) continue;
            double inner = 0.0;
            for (int j = 0; j < kp1; ++j) {
                inner += cy[a2][j] * values[static_cast<std::size_t>(i) * kp1 + j];
            }
            total += cx[a1][i] * inner;
        }
        return total;
    };

    for (std::size_t a1 = 0; a1 < m; ++a1) {
        for (std::size_t a2 = 0; a2 < m; ++a2) {
            const std::size_t l = a1 * m + a2;
            Eigen::Vector3d pos, j1, j2;
            for (int c = 0; c < 3; ++c) {
                pos[c] = tensor_eval(coord[c], a1, a2);
                j1[c] = tensor_eval(du[c], a1, a2);
                j2[c] = tensor_eval(dv[c], a1, a2);
            }
            acc += rule.weights[l] * f(pos) * metric_factor(j1, j2);
        }
    }
    return acc;
}

double exact_sum(std::span<const double> values) {
    // Shewchuk's growing expansion of exact partial sums, rounded the way
    // CPython's math.fsum does; the result is independent of input order.
    std::vector<double> partials;
    for (double x : values) {
        std::size_t used = 0;
        for (double y : partials) {
            if (std::abs(x) < std::abs(y)) std::swap(x, y);
            const double hi = x + y;
            const double lo = y - (hi - x);
            if (lo != 0.0) partials[used++] = lo;
            x = hi;
        }
        partials.resize(used);
        partials.push_back(x);
    }
    double hi = 0.0;
    std::size_t n = partials.size();
    if (n > 0) {
        hi = partials[--n];
        double lo = 0.0;
        while (n > 0) {
            const double x = hi;
            const double y = partials[--n];
            hi = x + y;
            const double yr = hi - x;
            lo = y - yr;
            if (lo != 0.0) break;
        }
        // Round-to-even correction when a residual straddles a tie.
        if (n > 0 && ((lo < 0.0 && partials[n - 1] < 0.0) ||
                      (lo > 0.0 && partials[n - 1] > 0.0))) {
            const double y = lo * 2.0;
            const double x = hi + y;
            if (y == x - hi) hi = x;
        }
    }
    return hi;
}

namespace {

int resolve_threads(int threads) {
    if (threads > 0) return threads;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

// Runs fn(i) for i in [0, n); rethrows the failure with the lowest index.
template <typename Fn>
void parallel_for(int n, int threads, Fn&& fn) {
    threads = std::min(resolve_threads(threads), std::max(n, 1));
    if (threads <= 1) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::mutex failure_mutex;
    int failed_index = -1;
    std::exception_ptr failure;

    auto worker = [&] {
        for (;;) {
            const int i = next.fetch_add(1, std::memory_order_relaxed);
            if (i >= n) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                if (failed_index < 0 || i < failed_index) {
                    failed_index = i;
                    failure = std::current_exception();
                }
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
}

}  // namespace

IntegralResult integrate(const TriangleMesh& mesh, const ImplicitSurface* surface,
                         const Integrand& f, int order,
                         const IntegrateOptions& options) {
    const auto start = std::chrono::steady_clock::now();
    if (!validate(mesh).pass()) {
        throw DomainError("integrate: mesh failed validation");
    }
    if (order < 1) {
        throw DomainError("integrate: order must be at least 1");
    }
    const int rule_order = options.rule_order < 0 ? order : options.rule_order;
    if (rule_order < order) {
        throw DomainError("integrate: rule order below geometry order");
    }

    const QuadRule2D rule = tensor_rule(make_rule(options.rule, rule_order));
    const DiffOps ops = tensor_diff(order);

    IntegralResult result;
    result.order = order;
    result.rule_order = rule_order;
    result.per_element.assign(mesh.triangle_count(), 0.0);

    parallel_for(mesh.triangle_count(), options.threads, [&](int i) {
        const ElementGeometry geom = build_element(mesh, i, surface, order);
        result.per_element[i] = element_integral(geom, f, rule, ops);
    });

    result.value = exact_sum(result.per_element);
    result.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    return result;
}

RateFit fit_exponential_rate(std::span<const ConvergenceEntry> entries,
                             double floor_error) {
    RateFit fit;
    double sn = 0, sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& e : entries) {
        if (!(e.error > floor_error)) continue;
        const double lx = e.degree;
        const double ly = std::log(e.error);
        sn += 1;
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    fit.points_used = static_cast<int>(sn);
    if (sn < 2) return fit;
    const double denom = sn * sxx - sx * sx;
    if (denom == 0.0) return fit;
    const double slope = (sn * sxy - sx * sy) / denom;
    const double intercept = (sy - slope * sx) / sn;
    fit.b = std::exp(-slope);
    fit.c = std::exp(intercept);
    return fit;
}

ConvergenceReport convergence_study(const TriangleMesh& mesh,
                                    const ImplicitSurface* surface,
                                    const Integrand& f,
                                    std::span<const int> degrees,
                                    double reference,
                                    const IntegrateOptions& options) {
    for (std::size_t i = 1; i < degrees.size(); ++i) {
        if (degrees[i] <= degrees[i - 1]) {
            throw DomainError("convergence_study: degrees must be strictly ascending");
        }
    }
    ConvergenceReport report;
    report.entries.reserve(degrees.size());
    for (const int degree : degrees) {
        const IntegralResult r = integrate(mesh, surface, f, degree, options);
        ConvergenceEntry entry;
        entry.degree = degree;
        entry.value = r.value;
        entry.reference = reference;
        entry.error = reference != 0.0
                          ? std::abs(r.value - reference) / std::abs(reference)
                          : std::abs(r.value);
        entry.runtime_ms = r.elapsed_seconds * 1e3;
        report.entries.push_back(entry);
    }
    report.fit = fit_exponential_rate(report.entries);
    return report;
}

}  // namespace hosq
