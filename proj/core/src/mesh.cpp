// SPDX-License-Identifier: Apache-2.0
#include "hosq/mesh.hpp"

#include <Eigen/Geometry>

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>
#include <string>
#include <unordered_map>

namespace hosq {

namespace {

// Reads lines, skipping blanks and '#' comments, tracking the line number.
class LineReader {
public:
    explicit LineReader(std::istream& in) : in_(in) {}

    bool next(std::string& out) {
        std::string line;
        while (std::getline(in_, line)) {
            ++line_number_;
            const auto hash = line.find('#');
            if (hash != std::string::npos) line.erase(hash);
            if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
            out = line;
            return true;
        }
        return false;
    }

    std::size_t line_number() const noexcept { return line_number_; }

private:
    std::istream& in_;
    std::size_t line_number_ = 0;
};

}  // namespace

TriangleMesh load_off(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("load_off: cannot open '" + path.string() + "'");
    }
    LineReader reader(in);
    std::string line;

    if (!reader.next(line)) {
        throw FormatError("missing OFF header", 1);
    }
    {
        std::istringstream ls(line);
        std::string header;
        ls >> header;
        if (header != "OFF") {
            throw FormatError("expected OFF header", reader.line_number());
        }
    }

    if (!reader.next(line)) {
        throw FormatError("missing counts line", reader.line_number() + 1);
    }
    long nv = -1, nf = -1, ne = 0;
    {
        std::istringstream ls(line);
        if (!(ls >> nv >> nf >> ne) || nv < 0 || nf < 0) {
            throw FormatError("malformed counts line", reader.line_number());
        }
    }

    TriangleMesh mesh;
    mesh.vertices.reserve(nv);
    mesh.triangles.reserve(nf);

    for (long i = 0; i < nv; ++i) {
        if (!reader.next(line)) {
            throw FormatError("unexpected end of file in vertex list",
                              reader.line_number() + 1);
        }
        std::istringstream ls(line);
        double x, y, z;
        if (!(ls >> x >> y >> z)) {
            throw FormatError("malformed vertex line", reader.line_number());
        }
        mesh.vertices.emplace_back(x, y, z);
    }

    for (long i = 0; i < nf; ++i) {
        if (!reader.next(line)) {
            throw FormatError("unexpected end of file in face list",
                              reader.line_number() + 1);
        }
        std::istringstream ls(line);
        long count;
        if (!(ls >> count)) {
            throw FormatError("malformed face line", reader.line_number());
        }
        if (count != 3) {
            throw NonTriangleFaceError(
                "face with " + std::to_string(count) + " vertices",
                reader.line_number());
        }
        long a, b, c;
        if (!(ls >> a >> b >> c)) {
            throw FormatError("malformed face line", reader.line_number());
        }
        if (a < 0 || b < 0 || c < 0 || a >= nv || b >= nv || c >= nv) {
            throw FormatError("vertex index out of range", reader.line_number());
        }
        mesh.triangles.push_back({static_cast<int>(a), static_cast<int>(b),
                                  static_cast<int>(c)});
    }
    return mesh;
}

void save_off(const TriangleMesh& mesh, const std::filesystem::path& path) {
    if (mesh.vertices.empty() || mesh.triangles.empty()) {
        throw DomainError("save_off: refusing to write an empty mesh");
    }
    std::ofstream out(path);
    if (!out) {
        throw IoError("save_off: cannot open '" + path.string() + "' for writing");
    }
    out << "OFF\n";
    out << mesh.vertices.size() << ' ' << mesh.triangles.size() << " 0\n";
    char buf[96];
    for (const auto& v : mesh.vertices) {
        std::snprintf(buf, sizeof buf, "%.17g %.17g %.17g\n", v.x(), v.y(), v.z());
        out << buf;
    }
    for (const auto& t : mesh.triangles) {
        out << "3 " << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
    }
    if (!out) {
        throw IoError("save_off: write to '" + path.string() + "' failed");
    }
}

namespace {

TriangleMesh icosahedron() {
    const double t = (1.0 + std::sqrt(5.0)) / 2.0;
    TriangleMesh mesh;
    mesh.vertices = {
        {-1, t, 0}, {1, t, 0}, {-1, -t, 0}, {1, -t, 0},
        {0, -1, t}, {0, 1, t}, {0, -1, -t}, {0, 1, -t},
        {t, 0, -1}, {t, 0, 1}, {-t, 0, -1}, {-t, 0, 1},
    };
    for (auto& v : mesh.vertices) v.normalize();
    mesh.triangles = {
        {0, 11, 5}, {0, 5, 1},  {0, 1, 7},  {0, 7, 10}, {0, 10, 11},
        {1, 5, 9},  {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
        {3, 9, 4},  {3, 4, 2},  {3, 2, 6},  {3, 6, 8},  {3, 8, 9},
        {4, 9, 5},  {2, 4, 11}, {6, 2, 10}, {8, 6, 7},  {9, 8, 1},
    };
    return mesh;
}

void subdivide_once(TriangleMesh& mesh) {
    std::unordered_map<std::uint64_t, int> midpoint;
    auto mid = [&](int a, int b) {
        const std::uint64_t key =
            (static_cast<std::uint64_t>(std::min(a, b)) << 32) |
            static_cast<std::uint32_t>(std::max(a, b));
        auto it = midpoint.find(key);
        if (it != midpoint.end()) return it->second;
        const int idx = static_cast<int>(mesh.vertices.size());
        mesh.vertices.push_back(0.5 * (mesh.vertices[a] + mesh.vertices[b]));
        midpoint.emplace(key, idx);
        return idx;
    };

    std::vector<std::array<int, 3>> refined;
    refined.reserve(mesh.triangles.size() * 4);
    for (const auto& tri : mesh.triangles) {
        const int ab = mid(tri[0], tri[1]);
        const int bc = mid(tri[1], tri[2]);
        const int ca = mid(tri[2], tri[0]);
        refined.push_back({tri[0], ab, ca});
        refined.push_back({tri[1], bc, ab});
        refined.push_back({tri[2], ca, bc});
        refined.push_back({ab, bc, ca});
    }
    mesh.triangles = std::move(refined);
}

// Central projection from the origin: the zero of phi along the ray
// through v, found by bracketing and bisection. Robust exactly where the
// generator's star-shapedness precondition holds, and immune to the
// vertex clustering that closest-point projection produces near
// high-curvature creases.
Eigen::Vector3d central_project(const ImplicitSurface& surface,
                                const Eigen::Vector3d& v) {
    const double vn = v.norm();
    if (vn < 1e-300) {
        throw DomainError("gen_icosphere: vertex ray has zero length");
    }
    const Eigen::Vector3d dir = v / vn;
    const double inside_sign = surface.value(Eigen::Vector3d::Zero()) < 0 ? 1.0 : -1.0;

    double lo = 0.0;
    double hi = vn;
    while (inside_sign * surface.value(hi * dir) < 0.0) {
        lo = hi;
        hi *= 1.5;
        if (hi > 1e6) {
            throw ConvergenceError(
                "gen_icosphere: ray from the origin never crosses the surface");
        }
    }
    for (int iter = 0; iter < 200 && hi - lo > 1e-17 * hi; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (inside_sign * surface.value(mid * dir) < 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi) * dir;
}

void project_vertices(TriangleMesh& mesh, const ImplicitSurface& surface) {
    for (auto& v : mesh.vertices) {
        v = central_project(surface, v);
    }
}

}  // namespace

TriangleMesh gen_icosphere(int subdivisions, const ImplicitSurface& surface) {
    if (subdivisions < 0 || subdivisions > 7) {
        throw DomainError("gen_icosphere: subdivisions must be in [0, 7]");
    }
    TriangleMesh mesh = icosahedron();
    project_vertices(mesh, surface);
    for (int level = 0; level < subdivisions; ++level) {
        subdivide_once(mesh);
        project_vertices(mesh, surface);
    }
    return mesh;
}

TriangleMesh gen_torus_grid(int nu, int nv, double major, double minor) {
    using std::numbers::pi;
    if (nu < 3 || nv < 3) {
        throw DomainError("gen_torus_grid: nu and nv must be at least 3");
    }
    if (!(major > minor && minor > 0.0)) {
        throw DomainError("gen_torus_grid: requires major > minor > 0");
    }
    TriangleMesh mesh;
    mesh.vertices.reserve(static_cast<std::size_t>(nu) * nv);
    for (int i = 0; i < nu; ++i) {
        const double u = 2.0 * pi * i / nu;
        for (int j = 0; j < nv; ++j) {
            const double v = 2.0 * pi * j / nv;
            const double ring = major + minor * std::cos(v);
            mesh.vertices.emplace_back(ring * std::cos(u), ring * std::sin(u),
                                       minor * std::sin(v));
        }
    }
    auto vid = [nu, nv](int i, int j) {
        return ((i % nu + nu) % nu) * nv + ((j % nv + nv) % nv);
    };
    mesh.triangles.reserve(static_cast<std::size_t>(2) * nu * nv);
    for (int i = 0; i < nu; ++i) {
        for (int j = 0; j < nv; ++j) {
            const int a = vid(i, j), b = vid(i + 1, j);
            const int c = vid(i + 1, j + 1), d = vid(i, j + 1);
            mesh.triangles.push_back({a, b, c});
            mesh.triangles.push_back({a, c, d});
        }
    }
    return mesh;
}

ValidationReport validate(const TriangleMesh& mesh) {
    ValidationReport report;
    report.vertex_count = mesh.vertex_count();
    report.triangle_count = mesh.triangle_count();

    const int nv = mesh.vertex_count();

    double bbox_sq = 0.0;
    if (nv > 0) {
        Eigen::Vector3d lo = mesh.vertices.front();
        Eigen::Vector3d hi = lo;
        for (const auto& v : mesh.vertices) {
            lo = lo.cwiseMin(v);
            hi = hi.cwiseMax(v);
        }
        bbox_sq = (hi - lo).squaredNorm();
    }

    std::map<std::pair<int, int>, int> edge_use;
    for (int i = 0; i < mesh.triangle_count(); ++i) {
        const auto& t = mesh.triangles[i];
        bool in_range = true;
        for (int k = 0; k < 3; ++k) {
            if (t[k] < 0 || t[k] >= nv) in_range = false;
        }
        if (!in_range) {
            report.out_of_range_triangles.push_back(i);
            continue;
        }
        if (t[0] == t[1] || t[1] == t[2] || t[2] == t[0]) {
            report.degenerate_triangles.push_back(i);
        } else {
            const Eigen::Vector3d e1 = mesh.vertices[t[1]] - mesh.vertices[t[0]];
            const Eigen::Vector3d e2 = mesh.vertices[t[2]] - mesh.vertices[t[0]];
            const double area = 0.5 * e1.cross(e2).norm();
            if (!(area > 1e-14 * bbox_sq)) {
                report.degenerate_triangles.push_back(i);
            }
        }
        for (int k = 0; k < 3; ++k) {
            const int a = t[k], b = t[(k + 1) % 3];
            ++edge_use[{std::min(a, b), std::max(a, b)}];
        }
    }

    report.edge_count = static_cast<long>(edge_use.size());
    for (const auto& [edge, count] : edge_use) {
        if (count == 1) report.boundary_edges.push_back(edge);
        if (count > 2) report.nonmanifold_edges.push_back(edge);
    }
    report.euler_characteristic =
        static_cast<long>(nv) - report.edge_count + report.triangle_count;
    return report;
}

}  // namespace hosq
