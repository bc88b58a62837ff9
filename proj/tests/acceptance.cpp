// SPDX-License-Identifier: Apache-2.0
//
// Acceptance suite: one line per criterion, nonzero exit when any
// asserted criterion fails. A missing optional data set is reported as
// SKIP and does not fail the run.

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Geometry>

#include "hosq/expression.hpp"
#include "hosq/integrator.hpp"
#include "hosq/mesh.hpp"
#include "hosq/quadrature.hpp"
#include "hosq/spectral.hpp"
#include "hosq/surfaces.hpp"
#include "hosq/transforms.hpp"

namespace {

int g_failures = 0;

void report(int index, const char* status, const std::string& detail) {
    std::printf("[%s] %d. %s\n", status, index, detail.c_str());
    std::fflush(stdout);
}

void criterion(int index, bool pass, const std::string& detail) {
    report(index, pass ? "PASS" : "FAIL", detail);
    if (!pass) ++g_failures;
}

std::string fmt(const char* format, ...) {
    char buffer[512];
    va_list args;
    va_start(args, format);
    std::vsnprintf(buffer, sizeof buffer, format, args);
    va_end(args);
    return buffer;
}

double wall_seconds(const std::chrono::steady_clock::time_point& start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
        .count();
}

hosq::IntegrateOptions threads(int n) {
    hosq::IntegrateOptions opts;
    opts.threads = n;
    return opts;
}

// --- criterion 1: sphere area -------------------------------------------
void sphere_area() {
    const hosq::Sphere sphere(1.0);
    const hosq::TriangleMesh mesh = hosq::gen_icosphere(2, sphere);
    const double reference = 4.0 * M_PI;

    const auto start = std::chrono::steady_clock::now();
    const auto at12 =
        hosq::integrate(mesh, &sphere, hosq::constant_one(), 12, threads(1));
    const double runtime = wall_seconds(start);
    const double rel12 = std::abs(at12.value - reference) / reference;

    const std::vector<int> degrees = {2, 4, 6, 8, 10, 12, 14};
    const auto sweep = hosq::convergence_study(mesh, &sphere, hosq::constant_one(),
                                               degrees, reference, threads(0));
    bool monotone = true;
    for (std::size_t i = 1; i < sweep.entries.size(); ++i) {
        if (!(sweep.entries[i].error < sweep.entries[i - 1].error ||
              sweep.entries[i].error <= 1e-13)) {
            monotone = false;
        }
    }
    const double floor_error = sweep.entries.back().error;

    const bool pass = mesh.triangle_count() == 320 && rel12 <= 1e-10 &&
                      monotone && floor_error <= 1e-13 && sweep.fit.b >= 5.0 &&
                      runtime < 2.0;
    criterion(1, pass,
              fmt("sphere area: K=%d deg-12 rel_err=%.2e (<=1e-10), sweep %s to "
                  "%.2e (<=1e-13), fitted b=%.2f (>=5), %.2fs (<2s)",
                  mesh.triangle_count(), rel12, monotone ? "monotone" : "NOT monotone",
                  floor_error, sweep.fit.b, runtime));
}

// --- criterion 2: torus area --------------------------------------------
void torus_area() {
    const hosq::Torus torus(2.0, 1.0);
    const hosq::TriangleMesh mesh = hosq::gen_torus_grid(16, 8, 2.0, 1.0);
    const double reference = 8.0 * M_PI * M_PI;

    const auto start = std::chrono::steady_clock::now();
    const auto at14 =
        hosq::integrate(mesh, &torus, hosq::constant_one(), 14, threads(0));
    const double runtime = wall_seconds(start);
    const double rel14 = std::abs(at14.value - reference) / reference;

    const std::vector<int> degrees = {2, 4, 6, 8, 10, 12, 14};
    const auto sweep = hosq::convergence_study(mesh, &torus, hosq::constant_one(),
                                               degrees, reference, threads(0));

    const bool pass = mesh.triangle_count() == 256 && rel14 <= 1e-10 &&
                      sweep.fit.b >= 4.0 && runtime < 3.0;
    criterion(2, pass,
              fmt("torus area: K=%d deg-14 rel_err=%.2e (<=1e-10), fitted b=%.2f "
                  "(>=4), %.2fs (<3s)",
                  mesh.triangle_count(), rel14, sweep.fit.b, runtime));
}

// --- criteria 3 and 4: gauss-bonnet sphere / torus ------------------------
void gauss_bonnet_sphere() {
    const hosq::Sphere sphere(1.0);
    const hosq::TriangleMesh mesh = hosq::gen_icosphere(2, sphere);
    const auto start = std::chrono::steady_clock::now();
    const auto result = hosq::integrate(
        mesh, &sphere, hosq::gauss_curvature_integrand(sphere), 12, threads(0));
    const double runtime = wall_seconds(start);
    const double err = std::abs(result.value - 4.0 * M_PI);
    const bool pass = err <= 1e-9 * 4.0 * M_PI && runtime < 3.0;
    criterion(3, pass,
              fmt("gauss-bonnet sphere: |I-4pi|=%.2e (<=%.2e), %.2fs (<3s)", err,
                  1e-9 * 4.0 * M_PI, runtime));
}

void gauss_bonnet_torus() {
    const hosq::Torus torus(2.0, 1.0);
    const hosq::TriangleMesh mesh = hosq::gen_torus_grid(16, 8, 2.0, 1.0);
    const auto result = hosq::integrate(
        mesh, &torus, hosq::gauss_curvature_integrand(torus), 14, threads(0));
    const double err = std::abs(result.value);
    criterion(4, err <= 1e-9, fmt("gauss-bonnet torus: |I|=%.2e (<=1e-9)", err));
}

// --- criterion 5: gauss-bonnet on dziuk's surface -------------------------
void gauss_bonnet_dziuk() {
    const hosq::DziukSurface dziuk;
    const auto start = std::chrono::steady_clock::now();
    const hosq::TriangleMesh mesh = hosq::gen_icosphere(3, dziuk);
    const auto result = hosq::integrate(
        mesh, &dziuk, hosq::gauss_curvature_integrand(dziuk), 16, threads(0));
    const double runtime = wall_seconds(start);
    const double err = std::abs(result.value - 4.0 * M_PI);
    const bool pass = err <= 1e-6 && runtime < 30.0;
    criterion(5, pass,
              fmt("gauss-bonnet dziuk: icosphere(3) K=%d deg-16 |I-4pi|=%.2e "
                  "(<=1e-6), %.1fs (<30s)",
                  mesh.triangle_count(), err, runtime));
}

// --- criterion 6: double torus from user-supplied data --------------------
void double_torus() {
    const std::filesystem::path path =
        std::filesystem::path(HOSQ_TEST_DATA_DIR) / "double_torus.off";
    if (!std::filesystem::exists(path)) {
        report(6, "SKIP",
               "double torus: no genus-2 OFF at " + path.string() +
                   "; supply one to enable this check");
        return;
    }
    const hosq::DoubleTorus surface(0.2);
    const hosq::TriangleMesh mesh = hosq::load_off(path);
    const auto validation = hosq::validate(mesh);
    const auto result = hosq::integrate(
        mesh, &surface, hosq::gauss_curvature_integrand(surface), 16, threads(0));
    const double err = std::abs(result.value - (-4.0 * M_PI));
    const bool pass = validation.pass() && validation.euler_characteristic == -2 &&
                      err <= 1e-4;
    criterion(6, pass,
              fmt("double torus: K=%d chi=%ld |I+4pi|=%.2e (<=1e-4)",
                  mesh.triangle_count(), validation.euler_characteristic, err));
}

// --- criterion 7: property suites -----------------------------------------
bool transform_roundtrips() {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> unit(-0.999, 0.999);
    for (int i = 0; i < 500; ++i) {
        const hosq::SquarePoint p{unit(rng), unit(rng)};
        const hosq::SquarePoint q = hosq::unsqueeze(hosq::squeeze(p));
        if (std::abs(q.x - p.x) > 1e-12 || std::abs(q.y - p.y) > 1e-12) return false;
    }
    return true;
}

bool quadrature_exactness() {
    for (const int n : {4, 9, 16, 32}) {
        const auto cc = hosq::cc_rule(n);
        const auto gl = hosq::gl_rule(n);
        for (int k = 0; k <= n; ++k) {
            double acc = 0.0;
            for (std::size_t i = 0; i < cc.nodes.size(); ++i)
                acc += cc.weights[i] * std::pow(cc.nodes[i], k);
            const double exact = k % 2 ? 0.0 : 2.0 / (k + 1);
            if (std::abs(acc - exact) > 1e-13) return false;
        }
        for (int k = 0; k <= 2 * n + 1; ++k) {
            double acc = 0.0;
            for (std::size_t i = 0; i < gl.nodes.size(); ++i)
                acc += gl.weights[i] * std::pow(gl.nodes[i], k);
            const double exact = k % 2 ? 0.0 : 2.0 / (k + 1);
            if (std::abs(acc - exact) > 1e-13) return false;
        }
    }
    return true;
}

bool spectral_exactness() {
    for (const int n : {4, 9, 16, 20}) {
        const auto ops = hosq::tensor_diff(n);
        const auto grid = hosq::cl_grid_2d(n);
        Eigen::VectorXd values(grid.size()), dx(grid.size()), dy(grid.size());
        const int a = std::min(3, n), b = std::min(2, n);
        for (std::size_t l = 0; l < grid.size(); ++l) {
            const auto p = grid.point(l);
            values[l] = std::pow(p.x(), a) * std::pow(p.y(), b);
            dx[l] = a * std::pow(p.x(), a - 1) * std::pow(p.y(), b);
            dy[l] = b * std::pow(p.x(), a) * std::pow(p.y(), b - 1);
        }
        if ((ops.dx * values - dx).cwiseAbs().maxCoeff() > 1e-11) return false;
        if ((ops.dy * values - dy).cwiseAbs().maxCoeff() > 1e-11) return false;
    }
    return true;
}

bool planar_exact_area() {
    hosq::TriangleMesh square;
    square.vertices = {{0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {0, 1, 0}};
    square.triangles = {{0, 1, 2}, {0, 2, 3}};
    const auto rule = hosq::tensor_rule(hosq::cc_rule(2));
    const auto ops = hosq::tensor_diff(2);
    double area = 0.0;
    for (int i = 0; i < square.triangle_count(); ++i) {
        area += hosq::element_integral(hosq::build_element(square, i, nullptr, 2),
                                       hosq::constant_one(), rule, ops);
    }
    return std::abs(area - 1.0) < 1e-14;
}

bool octant_oracle() {
    const hosq::Sphere sphere(1.0);
    hosq::TriangleMesh octant;
    octant.vertices = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
    octant.triangles = {{0, 1, 2}};
    const auto geom = hosq::build_element(octant, 0, &sphere, 16);
    const auto rule = hosq::tensor_rule(hosq::cc_rule(16));
    const auto ops = hosq::tensor_diff(16);
    const double value =
        hosq::element_integral(geom, hosq::constant_one(), rule, ops);

    // brute force: 200x200 tensor gauss-legendre on the exact parametrization
    const auto gl = hosq::gl_rule(199);
    double brute = 0.0;
    for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
        for (std::size_t j = 0; j < gl.nodes.size(); ++j) {
            const double phi = (gl.nodes[j] + 1.0) * M_PI / 4.0;
            brute += gl.weights[i] * gl.weights[j] * std::sin(phi) *
                     (M_PI / 4.0) * (M_PI / 4.0);
        }
    }
    return std::abs(value - brute) < 1e-9;
}

bool thread_bit_identity() {
    const hosq::Sphere sphere(1.0);
    const auto mesh = hosq::gen_icosphere(2, sphere);
    const auto a = hosq::integrate(mesh, &sphere, hosq::constant_one(), 8, threads(1));
    const auto b = hosq::integrate(mesh, &sphere, hosq::constant_one(), 8, threads(8));
    return a.value == b.value;
}

bool order_invariance() {
    const hosq::Sphere sphere(1.0);
    const auto mesh = hosq::gen_icosphere(1, sphere);
    hosq::TriangleMesh shuffled = mesh;
    std::mt19937 rng(99);
    std::shuffle(shuffled.triangles.begin(), shuffled.triangles.end(), rng);
    const auto a = hosq::integrate(mesh, &sphere, hosq::constant_one(), 8, threads(0));
    const auto b =
        hosq::integrate(shuffled, &sphere, hosq::constant_one(), 8, threads(0));
    if (a.value != b.value) return false;

    // orientation: permuting one triangle's vertices leaves its integral alone
    const auto rule = hosq::tensor_rule(hosq::cc_rule(12));
    const auto ops = hosq::tensor_diff(12);
    hosq::TriangleMesh permuted = mesh;
    const auto t = permuted.triangles[5];
    permuted.triangles[5] = {t[2], t[0], t[1]};
    const double u = hosq::element_integral(
        hosq::build_element(mesh, 5, &sphere, 12), hosq::constant_one(), rule, ops);
    const double v = hosq::element_integral(
        hosq::build_element(permuted, 5, &sphere, 12), hosq::constant_one(), rule,
        ops);
    return std::abs(u - v) < 1e-12;
}

void property_suites() {
    struct Item {
        const char* name;
        bool ok;
    };
    const Item items[] = {
        {"transform-roundtrip", transform_roundtrips()},
        {"quadrature-exactness", quadrature_exactness()},
        {"spectral-exactness", spectral_exactness()},
        {"planar-exact-area", planar_exact_area()},
        {"octant-oracle", octant_oracle()},
        {"thread-bit-identity", thread_bit_identity()},
        {"order-invariance", order_invariance()},
    };
    std::string detail = "properties:";
    bool pass = true;
    for (const auto& item : items) {
        detail += fmt(" %s=%s", item.name, item.ok ? "ok" : "FAIL");
        pass = pass && item.ok;
    }
    criterion(7, pass, detail);
}

// --- criterion 8: algebraic order for a C^2 integrand ----------------------
void c2_order() {
    const hosq::Sphere sphere(1.0);
    const auto mesh = hosq::gen_icosphere(2, sphere);
    const Eigen::Vector3d direction = Eigen::Vector3d(0.3, 0.5, 0.8).normalized();
    const hosq::Integrand f = [&direction](const Eigen::Vector3d& p) {
        const double t = p.dot(direction);
        return t > 0.0 ? t * t * t : 0.0;
    };

    // reference by brute force over the exact sphere parametrization
    const auto gl = hosq::gl_rule(499);
    double reference = 0.0;
    for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
        const double theta = (gl.nodes[i] + 1.0) * M_PI;  // [0, 2pi]
        for (std::size_t j = 0; j < gl.nodes.size(); ++j) {
            const double phi = (gl.nodes[j] + 1.0) * M_PI / 2.0;  // [0, pi]
            const Eigen::Vector3d p(std::sin(phi) * std::cos(theta),
                                    std::sin(phi) * std::sin(theta),
                                    std::cos(phi));
            reference +=
                gl.weights[i] * gl.weights[j] * f(p) * std::sin(phi) * M_PI * M_PI / 2.0;
        }
    }
    const bool reference_sane = std::abs(reference - M_PI / 2.0) < 1e-10;

    std::vector<double> log_n, log_e;
    std::string trace;
    for (int degree = 4; degree <= 24; degree += 2) {
        const auto result = hosq::integrate(mesh, &sphere, f, degree, threads(0));
        const double err = std::abs(result.value - reference) / reference;
        if (err > 1e-14) {
            log_n.push_back(std::log(static_cast<double>(degree)));
            log_e.push_back(std::log(err));
        }
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(log_n.size());
    for (std::size_t i = 0; i < log_n.size(); ++i) {
        sx += log_n[i];
        sy += log_e[i];
        sxx += log_n[i] * log_n[i];
        sxy += log_n[i] * log_e[i];
    }
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    const bool pass = reference_sane && slope <= -2.0;
    criterion(8, pass,
              fmt("C2 integrand order: log-log slope=%.2f (<=-2) over degrees "
                  "4..24, reference %s",
                  slope, reference_sane ? "verified" : "BAD"));
}

}  // namespace

int main() {
    std::printf("acceptance suite\n");
    sphere_area();
    torus_area();
    gauss_bonnet_sphere();
    gauss_bonnet_torus();
    gauss_bonnet_dziuk();
    double_torus();
    property_suites();
    c2_order();
    if (g_failures > 0) {
        std::printf("%d criterion(s) failed\n", g_failures);
    } else {
        std::printf("all asserted criteria passed\n");
    }
    return g_failures;
}
