#pragma once

#include "gkf/domain_set.hpp"
#include "gkf/quadrature.hpp"

#include <Eigen/Dense>

#include <cstdint>

namespace gkf {

/// Diagonal matrix D = diag(lambda_1 .. lambda_K) of second spectral
/// moments; defines the ellipsoid {w : w^T D^{-1} w <= eps^2} and the
/// weighted inner products used throughout.
class HeterogeneityMatrix {
public:
    explicit HeterogeneityMatrix(Eigen::VectorXd lambdas);
    static HeterogeneityMatrix identity(int k);

    int dim() const { return static_cast<int>(lambdas_.size()); }
    const Eigen::VectorXd& lambdas() const { return lambdas_; }

    Eigen::VectorXd apply(const Eigen::VectorXd& v) const;         ///< D v
    Eigen::VectorXd apply_sqrt(const Eigen::VectorXd& v) const;    ///< D^{1/2} v
    Eigen::VectorXd apply_inverse(const Eigen::VectorXd& v) const; ///< D^{-1} v

    /// <a, b>_{D^{-1}}
    double inner_q(const Eigen::VectorXd& a, const Eigen::VectorXd& b) const;

private:
    Eigen::VectorXd lambdas_;
};

/// |x|_D = sqrt(x^T D x).
double theta_norm(const Eigen::VectorXd& x, const HeterogeneityMatrix& d);

struct ProjectionConfig {
    int grid_seeds = 17;      ///< grid-search seeds per chart dimension
    double tol = 1e-10;       ///< Newton residual tolerance
    int max_iterations = 100; ///< per Newton start
};

struct ProjectionResult {
    Eigen::VectorXd point; ///< minimizer on the boundary (or y itself inside K)
    double value = 0.0;    ///< V_K(y), the D^{-1}-weighted squared distance
    int iterations = 0;
    double kkt_residual = 0.0;
};

/// Weighted projection onto K: minimizes |z - y|^2_{D^{-1}} over z in K by
/// a Lagrange/KKT Newton iteration seeded from a chart grid search. Points
/// already in K come back unchanged with value 0.
ProjectionResult project_onto_K(const Eigen::VectorXd& y, const DomainSet& k,
                                const HeterogeneityMatrix& d,
                                const ProjectionConfig& cfg = {});

/// True iff V_K(y) <= eps^2, i.e. y lies in the ellipsoidal tube of K.
bool tube_membership(const Eigen::VectorXd& y, const DomainSet& k,
                     const HeterogeneityMatrix& d, double eps,
                     const ProjectionConfig& cfg = {});

/// Columns E_1 .. E_{K-1}: a frame spanning the boundary tangent space at z,
/// orthonormal for the D^{-1} inner product.
Eigen::MatrixXd q_orthonormal_tangent_frame(const Eigen::VectorXd& z, const DomainSet& k,
                                            const HeterogeneityMatrix& d);

/// The (K-1)x(K-1) matrix A(z) of the outward normal field in a frame
/// orthonormal for the D^{-1} inner product and spanning the tangent space
/// of the boundary. det(I + eps A) is the change of measure for the tube
/// boundary map z -> z + eps D eta / |eta|_D.
Eigen::MatrixXd shape_matrix(const Eigen::VectorXd& z, const DomainSet& k,
                             const HeterogeneityMatrix& d);

/// Density (j-1)! detr_{j-1}(A(z)) of the surface measure M*_j against
/// (K-1)-dimensional Hausdorff measure; zero for j > K.
double surface_measure_density(int j, const Eigen::VectorXd& z,
                               const DomainSet& k, const HeterogeneityMatrix& d);

/// Gaussian Minkowski functionals M_0 .. M_max_order of K under the
/// D-ellipsoid structuring element, with per-order quadrature error
/// estimates.
struct GmfVector {
    Eigen::VectorXd values;
    Eigen::VectorXd errors;
};

GmfVector gmf(const DomainSet& k, const HeterogeneityMatrix& d, int max_order,
              const QuadratureConfig& quad = {.abs_tol = 1e-7});

struct McEstimate {
    double estimate = 0.0;
    double std_error = 0.0;
    long n = 0;
};

/// Monte-Carlo Gaussian volume of the ellipsoidal tube: fraction of n
/// standard K-variate Gaussian draws passing tube_membership, with binomial
/// standard error. Deterministic given the seed and independent of the
/// worker count.
McEstimate mc_tube_volume(const DomainSet& k, const HeterogeneityMatrix& d,
                          double eps, long n, std::uint64_t seed,
                          int n_threads = 0);

} // namespace gkf
