// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <filesystem>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "hosq/surfaces.hpp"

namespace hosq {

/// Flat conforming triangulation: vertex positions plus index triples.
struct TriangleMesh {
    std::vector<Eigen::Vector3d> vertices;
    std::vector<std::array<int, 3>> triangles;

    int triangle_count() const noexcept {
        return static_cast<int>(triangles.size());
    }
    int vertex_count() const noexcept {
        return static_cast<int>(vertices.size());
    }
};

/// Parse an ASCII OFF file (header "OFF", counts line "V F E", V vertex
/// lines, F face lines "3 i j k"). Blank lines and '#' comments are skipped.
/// Throws FormatError (with line number), NonTriangleFaceError, IoError.
TriangleMesh load_off(const std::filesystem::path& path);

/// Inverse of load_off; coordinates are printed with 17 significant digits
/// so a round trip reproduces every double bit-exactly. Rejects empty
/// meshes (DomainError), throws IoError on write failure.
void save_off(const TriangleMesh& mesh, const std::filesystem::path& path);

/// Icosahedron subdivided `subdivisions` times (at most 7), every vertex
/// placed on the surface after each level by central projection along its
/// ray from the origin. K = 20 * 4^subdivisions.
///
/// Requires a genus-0 surface that is star-shaped about the origin; a ray
/// that never crosses the zero set raises ConvergenceError.
TriangleMesh gen_icosphere(int subdivisions, const ImplicitSurface& surface);

/// Structured nu-by-nv grid on the parametric torus with radii
/// (major, minor), split into 2*nu*nv triangles. Closed and conforming.
TriangleMesh gen_torus_grid(int nu, int nv, double major, double minor);

/// Structural validation result. pass() requires a nonempty mesh whose
/// undirected edges are each shared by exactly two triangles, with no
/// degenerate or out-of-range triangles.
struct ValidationReport {
    int vertex_count = 0;
    int triangle_count = 0;
    long edge_count = 0;
    long euler_characteristic = 0;  ///< V - E + F
    std::vector<std::pair<int, int>> boundary_edges;     ///< shared by one face
    std::vector<std::pair<int, int>> nonmanifold_edges;  ///< shared by three or more
    std::vector<int> degenerate_triangles;  ///< repeated vertex or ~zero area
    std::vector<int> out_of_range_triangles;

    bool pass() const noexcept {
        return triangle_count > 0 && boundary_edges.empty() &&
               nonmanifold_edges.empty() && degenerate_triangles.empty() &&
               out_of_range_triangles.empty();
    }
};

ValidationReport validate(const TriangleMesh& mesh);

}  // namespace hosq
