#pragma once

#include "gkf/mesh.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace gkf {

/// Angular power spectrum {C_ell} of one isotropic spherical component.
/// A normalized spectrum has unit field variance:
/// sum_ell (2 ell + 1) C_ell / (4 pi) = 1.
struct PowerSpectrum {
    Eigen::VectorXd c_ell; ///< index ell = 0 .. lmax, nonnegative

    int lmax() const { return static_cast<int>(c_ell.size()) - 1; }
    double variance() const;
    PowerSpectrum normalized() const;
    bool is_normalized(double tol = 1e-10) const;

    /// Two-column text format: header "ell,c_ell", one row per degree.
    static PowerSpectrum read_csv(std::istream& in);
    static PowerSpectrum read_csv_file(const std::string& path);
    void write_csv(std::ostream& out) const;
};

/// Second spectral moment: per-direction gradient variance
/// lambda = sum_ell (2 ell + 1) C_ell ell (ell + 1) / (8 pi).
double spectral_moment(const PowerSpectrum& spectrum);

/// Values of the K-vector field on the grid plus provenance.
struct FieldSample {
    Eigen::MatrixXd values; ///< n_vertices x K
    std::uint64_t seed = 0;
    std::vector<PowerSpectrum> spectra;
};

/// Precomputes the harmonic basis on a grid once and draws independent
/// component fields from it. Component k of a sample with master seed s is
/// synthesized from the stream derive_seed(s, k).
class SphereSynthesizer {
public:
    SphereSynthesizer(const SphereGrid& grid, int lmax, int n_threads = 0);

    int lmax() const { return lmax_; }
    long vertex_count() const { return basis_.rows(); }
    const Eigen::MatrixXd& basis() const { return basis_; }

    /// Coefficient vector for one component (deterministic in the seed).
    Eigen::VectorXd draw_coefficients(const PowerSpectrum& spectrum,
                                      std::uint64_t stream_seed) const;

    /// n_vertices x K sample; spectra must be normalized.
    Eigen::MatrixXd sample(const std::vector<PowerSpectrum>& spectra,
                           std::uint64_t seed) const;

private:
    int lmax_;
    Eigen::MatrixXd basis_;
};

/// One-shot synthesis on the sphere (builds the basis internally).
FieldSample synthesize_sphere(const std::vector<PowerSpectrum>& spectra,
                              const SphereGrid& grid, std::uint64_t seed);

/// Empirical covariance of the gradient field from tangent-plane finite
/// differences, for comparison against diag(lambda) (x) I. Entry ordering
/// is (component k, direction i) -> 2k + i; std_error holds the
/// across-replication standard errors.
struct GradientCovarianceResult {
    Eigen::MatrixXd covariance;
    Eigen::MatrixXd std_error;
    int n_replications = 0;
};

GradientCovarianceResult gradient_covariance_check(const SphereGrid& grid,
                                                   const std::vector<PowerSpectrum>& spectra,
                                                   int n_replications,
                                                   std::uint64_t seed);

/// Finite random Fourier series on a circle: sigma2[k] is the variance
/// carried by harmonic k (angular frequency 2 pi k / circumference).
/// Normalized: sum_k sigma2[k] = 1.
struct FourierSpectrum {
    Eigen::VectorXd sigma2;
    double circumference = 0.0;

    double variance() const { return sigma2.sum(); }
    FourierSpectrum normalized() const;
    bool is_normalized(double tol = 1e-10) const;
};

/// Second spectral moment of the circle field: sum_k sigma2[k] omega_k^2.
double spectral_moment(const FourierSpectrum& spectrum);

/// n x K sample of independent circle fields at the grid vertices.
Eigen::MatrixXd synthesize_circle(const std::vector<FourierSpectrum>& spectra,
                                  const CircleGrid& grid, std::uint64_t seed);

} // namespace gkf
