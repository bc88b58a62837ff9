// SPDX-License-Identifier: Apache-2.0
//
// Builds a conforming genus-2 triangle mesh for the double torus
// ((x^2+y^2)^2 - x^2 + y^2)^2 + z^2 = a^2 and writes it as OFF.
//
// Construction: voxelize the slab over the footprint {|w| <= a},
// w = (x^2+y^2)^2 - x^2 + y^2, take the boundary surface of the voxel
// solid (two through-holes where w < -a, hence genus 2), project every
// vertex to the implicit surface, then midpointar-subdivide and re-project.

#include <cstdio>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "CLI11.hpp"

#include "hosq/integrator.hpp"
#include "hosq/mesh.hpp"
#include "hosq/surfaces.hpp"

namespace {

double footprint(double x, double y) {
    const double q = x * x + y * y;
    return q * q - x * x + y * y;
}

hosq::TriangleMesh build_slab(double a, double cell, double height,
                              double x_span, double y_span) {
    const int nx = static_cast<int>(std::ceil(2.0 * x_span / cell));
    const int ny = static_cast<int>(std::ceil(2.0 * y_span / cell));
    std::vector<double> xs(nx + 1), ys(ny + 1);
    for (int i = 0; i <= nx; ++i) xs[i] = -x_span + 2.0 * x_span * i / nx;
    for (int j = 0; j <= ny; ++j) ys[j] = -y_span + 2.0 * y_span * j / ny;

    std::vector<std::vector<bool>> included(nx, std::vector<bool>(ny, false));
    for (int i = 0; i < nx; ++i) {
        for (int j = 0; j < ny; ++j) {
            const double xc = 0.5 * (xs[i] + xs[i + 1]);
            const double yc = 0.5 * (ys[j] + ys[j + 1]);
            included[i][j] = std::abs(footprint(xc, yc)) <= a;
        }
    }
    auto inside = [&](int i, int j) {
        return i >= 0 && i < nx && j >= 0 && j < ny && included[i][j];
    };

    hosq::TriangleMesh mesh;
    std::map<std::tuple<int, int, int>, int> vertex_ids;
    auto vid = [&](int i, int j, int top) {
        const auto key = std::make_tuple(i, j, top);
        const auto it = vertex_ids.find(key);
        if (it != vertex_ids.end()) return it->second;
        const int id = mesh.vertex_count();
        mesh.vertices.emplace_back(xs[i], ys[j], top ? height : -height);
        vertex_ids.emplace(key, id);
        return id;
    };
    auto quad = [&](int p, int q, int r, int s) {
        mesh.triangles.push_back({p, q, r});
        mesh.triangles.push_back({p, r, s});
    };

    for (int i = 0; i < nx; ++i) {
        for (int j = 0; j < ny; ++j) {
            if (!included[i][j]) continue;
            quad(vid(i, j, 1), vid(i + 1, j, 1), vid(i + 1, j + 1, 1),
                 vid(i, j + 1, 1));
            quad(vid(i, j, 0), vid(i, j + 1, 0), vid(i + 1, j + 1, 0),
                 vid(i + 1, j, 0));
            if (!inside(i - 1, j)) {
                quad(vid(i, j, 0), vid(i, j, 1), vid(i, j + 1, 1), vid(i, j + 1, 0));
            }
            if (!inside(i + 1, j)) {
                quad(vid(i + 1, j, 0), vid(i + 1, j + 1, 0), vid(i + 1, j + 1, 1),
                     vid(i + 1, j, 1));
            }
            if (!inside(i, j - 1)) {
                quad(vid(i, j, 0), vid(i + 1, j, 0), vid(i + 1, j, 1), vid(i, j, 1));
            }
            if (!inside(i, j + 1)) {
                quad(vid(i, j + 1, 0), vid(i, j + 1, 1), vid(i + 1, j + 1, 1),
                     vid(i + 1, j + 1, 0));
            }
        }
    }
    return mesh;
}

void subdivide_midpoint(hosq::TriangleMesh& mesh) {
    std::unordered_map<std::uint64_t, int> midpoint;
    auto mid = [&](int a, int b) {
        const std::uint64_t key =
            (static_cast<std::uint64_t>(std::min(a, b)) << 32) |
            static_cast<std::uint32_t>(std::max(a, b));
        const auto it = midpoint.find(key);
        if (it != midpoint.end()) return it->second;
        const int id = mesh.vertex_count();
        mesh.vertices.push_back(0.5 * (mesh.vertices[a] + mesh.vertices[b]));
        midpoint.emplace(key, id);
        return id;
    };
    std::vector<std::array<int, 3>> refined;
    refined.reserve(mesh.triangles.size() * 4);
    for (const auto& t : mesh.triangles) {
        const int ab = mid(t[0], t[1]);
        const int bc = mid(t[1], t[2]);
        const int ca = mid(t[2], t[0]);
        refined.push_back({t[0], ab, ca});
        refined.push_back({t[1], bc, ab});
        refined.push_back({t[2], ca, bc});
        refined.push_back({ab, bc, ca});
    }
    mesh.triangles = std::move(refined);
}

void project_all(hosq::TriangleMesh& mesh, const hosq::ImplicitSurface& surface) {
    for (auto& v : mesh.vertices) {
        v = hosq::closest_point(surface, v);
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Build a genus-2 double-torus OFF mesh"};
    double a = 0.2;
    double cell = 0.075;
    double height = 0.08;
    int subdivisions = 2;
    int check_degree = 0;
    std::string out = "double_torus.off";
    app.add_option("--a", a, "Double torus parameter");
    app.add_option("--cell", cell, "Footprint cell size");
    app.add_option("--height", height, "Slab half-thickness");
    app.add_option("--subdivide", subdivisions, "Refinement levels after projection");
    app.add_option("--check-degree", check_degree,
                   "Run a Gauss-Bonnet check at this degree (0 = skip)");
    app.add_option("--out", out, "Output OFF path")->required();
    CLI11_PARSE(app, argc, argv);

    const hosq::DoubleTorus surface(a);

    hosq::TriangleMesh mesh = build_slab(a, cell, height, 1.45, 0.9);
    std::printf("slab: %d vertices, %d triangles\n", mesh.vertex_count(),
                mesh.triangle_count());

    project_all(mesh, surface);
    for (int level = 0; level < subdivisions; ++level) {
        subdivide_midpoint(mesh);
        project_all(mesh, surface);
    }

    const hosq::ValidationReport report = hosq::validate(mesh);
    std::printf("mesh: %d vertices, %d triangles, chi=%ld, valid=%s\n",
                mesh.vertex_count(), mesh.triangle_count(),
                report.euler_characteristic, report.pass() ? "yes" : "no");
    if (!report.pass() || report.euler_characteristic != -2) {
        std::printf("boundary=%zu nonmanifold=%zu degenerate=%zu\n",
                    report.boundary_edges.size(), report.nonmanifold_edges.size(),
                    report.degenerate_triangles.size());
        return 2;
    }

    if (check_degree > 0) {
        const auto result = hosq::integrate(
            mesh, &surface, hosq::gauss_curvature_integrand(surface), check_degree,
            {hosq::RuleKind::ClenshawCurtis, -1, 0});
        std::printf("gauss-bonnet at degree %d: %.12f (target %.12f, err %.3e)\n",
                    check_degree, result.value, -4.0 * M_PI,
                    std::abs(result.value + 4.0 * M_PI));
    }

    hosq::save_off(mesh, out);
    std::printf("wrote %s\n", out.c_str());
    return 0;
}
