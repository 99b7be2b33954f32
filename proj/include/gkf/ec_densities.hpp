#pragma once

#include "gkf/function_spec.hpp"
#include "gkf/geometry.hpp"
#include "gkf/quadrature.hpp"
#include "gkf/tube_geometry.hpp"

#include <Eigen/Dense>

namespace gkf {

/// EC densities rho_0 .. rho_n at a fixed level.
struct EcDensityVector {
    double u = 0.0;
    Eigen::VectorXd values;
};

/// Classical Gaussian EC densities: rho_0 = 1 - Phi(u) and
/// rho_j = (2 pi)^{-(j+1)/2} He_{j-1}(u) exp(-u^2/2) for j >= 1.
double rho_gaussian(int j, double u);

/// Marginal tail probability P(F(y) >= u) under the standard K-variate
/// Gaussian; equals rho_0(F, u).
double tail_probability(const FunctionSpec& f, double u);

/// EC density rho_j(F, u) for j >= 1 by quadrature over the level set
/// F^{-1}(u): the Hermite-weighted boundary integral with the restricted
/// trace powers of D grad^2 F over the tangent space of the level set,
/// computed as m! detr_m of the restricted matrix in a D^{-1}-orthonormal
/// frame. j = 0 delegates to tail_probability.
double rho_via_levelset(const FunctionSpec& f, const HeterogeneityMatrix& d,
                        double u, int j, const QuadratureConfig& quad = {.abs_tol = 1e-7});

/// The order-2 Gaussian Minkowski functional of the disk complement
/// {x in R^2 : |x|^2 >= radius^2} under D = diag(lambda1, lambda2),
/// evaluated as the two theta-integrals over the boundary circle.
double chi2_s2_m2(double radius, double lambda1, double lambda2,
                  const QuadratureConfig& quad = {.abs_tol = 1e-7});

/// Expected Euler characteristic of the excursion set of f = F o y over the
/// manifold: sum_j L_j(M) rho_j(F, u), closed forms where available.
double expected_ec(const Manifold& m, const FunctionSpec& f,
                   const HeterogeneityMatrix& d, double u,
                   const QuadratureConfig& quad = {.abs_tol = 1e-7});

/// The per-level density vector used by expected_ec (rho_0 .. rho_n).
EcDensityVector ec_density_vector(int n, const FunctionSpec& f,
                                  const HeterogeneityMatrix& d, double u,
                                  const QuadratureConfig& quad = {.abs_tol = 1e-7});

} // namespace gkf
