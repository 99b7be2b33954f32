#pragma once

#include <Eigen/Dense>

#include <vector>

namespace gkf {

/// Closed orientable triangulation of the unit sphere by repeated
/// subdivision of the icosahedron, vertices projected back to unit norm.
struct SphereGrid {
    Eigen::Matrix<double, Eigen::Dynamic, 3> vertices; ///< unit rows
    Eigen::Matrix<int, Eigen::Dynamic, 3> triangles;
    Eigen::Matrix<int, Eigen::Dynamic, 2> edges; ///< unique, first index smaller
    int subdivision_level = 0;

    static SphereGrid icosphere(int level);

    long vertex_count() const { return vertices.rows(); }
    long edge_count() const { return edges.rows(); }
    long triangle_count() const { return triangles.rows(); }

    /// V - E + F; 2 for every icosphere.
    long euler_number() const { return vertex_count() - edge_count() + triangle_count(); }

    /// One-ring neighbor lists (sorted).
    std::vector<std::vector<int>> vertex_neighbors() const;

    /// Approximate number of vertices around a great circle; ell_max beyond
    /// a quarter of this under-resolves the field.
    double vertices_per_great_circle() const;
};

/// Cotangent Laplacian with barycentric lumped mass, applied to a vertex
/// function. Sign convention: approximates the (negative semidefinite)
/// Laplace-Beltrami operator, so single-degree harmonics give
/// L f = -ell(ell+1) f.
Eigen::VectorXd cotan_laplacian_apply(const SphereGrid& grid, const Eigen::VectorXd& f);

/// Uniform cyclic grid on a circle of given circumference; edges join
/// consecutive vertices (V = E = n).
struct CircleGrid {
    int n = 0;
    double circumference = 0.0;

    static CircleGrid uniform(int n, double circumference);

    /// Arclength position of vertex i.
    double arclength(int i) const { return circumference * i / n; }
};

} // namespace gkf
