#pragma once

#include "gkf/field_sim.hpp"
#include "gkf/function_spec.hpp"
#include "gkf/mesh.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <vector>

namespace gkf {

/// Vertex mask of the excursion set {F(y) >= u}.
struct ExcursionMask {
    std::vector<std::uint8_t> above;
    double level = 0.0;
};

/// Mask from per-vertex field values (n_vertices x K) under F; ties
/// (value exactly u) are included, matching the closed set F^{-1}[u, inf).
ExcursionMask excursion_mask(const Eigen::MatrixXd& values, const FunctionSpec& f, double u);

/// Strict variant {F(y) > u}, used for the complementation identity.
ExcursionMask excursion_mask_strict(const Eigen::MatrixXd& values, const FunctionSpec& f,
                                    double u);

/// Euler characteristic V' - E' + F' of the induced subcomplex whose
/// simplices have every vertex above the level.
long euler_characteristic(const SphereGrid& grid, const ExcursionMask& mask);
long euler_characteristic(const CircleGrid& grid, const ExcursionMask& mask);

/// Per-level Monte-Carlo estimate of E[chi] over independent field samples.
struct McEcResult {
    std::vector<double> levels;
    Eigen::VectorXd mean;
    Eigen::VectorXd std_error;
    int n_sims = 0;
};

McEcResult mc_expected_ec(const SphereGrid& grid,
                          const std::vector<PowerSpectrum>& spectra,
                          const FunctionSpec& f, const std::vector<double>& levels,
                          int n_sims, std::uint64_t seed, int lmax,
                          int n_threads = 0);

McEcResult mc_expected_ec(const CircleGrid& grid,
                          const std::vector<FourierSpectrum>& spectra,
                          const FunctionSpec& f, const std::vector<double>& levels,
                          int n_sims, std::uint64_t seed, int n_threads = 0);

} // namespace gkf
