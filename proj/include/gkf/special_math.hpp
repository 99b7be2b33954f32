#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>

namespace gkf {

inline constexpr double inv_sqrt_2pi = 0.3989422804014326779399461;
inline constexpr double two_pi = 6.2831853071795864769252868;

/// Probabilists' Hermite polynomial He_n(x), weight exp(-x^2/2).
/// He_{n+1}(x) = x He_n(x) - n He_{n-1}(x).
template <typename Scalar>
Scalar hermite_prob(int n, Scalar x)
{
    if (n < 0)
        throw std::invalid_argument("hermite_prob: order must be nonnegative");
    Scalar p0 = Scalar(1);
    if (n == 0)
        return p0;
    Scalar p1 = x;
    for (int k = 1; k < n; ++k) {
        Scalar p2 = x * p1 - Scalar(k) * p0;
        p0 = p1;
        p1 = p2;
    }
    return p1;
}

/// Standard normal density.
inline double gaussian_pdf(double x)
{
    return inv_sqrt_2pi * std::exp(-0.5 * x * x);
}

/// Standard normal distribution function.
inline double gaussian_cdf(double x)
{
    return 0.5 * std::erfc(-x * 0.7071067811865475244);
}

/// Upper tail 1 - Phi(x), evaluated without cancellation for large x.
inline double gaussian_tail(double x)
{
    return 0.5 * std::erfc(x * 0.7071067811865475244);
}

/// Density of the K-variate standard Gaussian at x.
inline double gaussian_pdf_k(const Eigen::VectorXd& x)
{
    const double k = static_cast<double>(x.size());
    return std::pow(two_pi, -0.5 * k) * std::exp(-0.5 * x.squaredNorm());
}

/// Regularized upper incomplete gamma Q(a, x) = Gamma(a,x)/Gamma(a).
/// Series for x < a+1, continued fraction otherwise.
double gamma_q(double a, double x);

/// Upper tail of the chi-squared distribution with k degrees of freedom.
inline double chi_squared_tail(int k, double x)
{
    if (k < 1)
        throw std::invalid_argument("chi_squared_tail: dof must be positive");
    if (x <= 0.0)
        return 1.0;
    return gamma_q(0.5 * k, 0.5 * x);
}

/// Sum of all j-by-j principal minors of a square matrix; detr_0 = 1 and
/// detr_dim = det. Coefficient of eps^j in det(I + eps A).
double detr(int j, const Eigen::MatrixXd& m);

/// Binomial coefficient as a double (small arguments).
inline double binomial(int n, int k)
{
    if (k < 0 || k > n)
        return 0.0;
    double r = 1.0;
    for (int i = 1; i <= k; ++i)
        r *= static_cast<double>(n - k + i) / static_cast<double>(i);
    return r;
}

inline double factorial(int n)
{
    double r = 1.0;
    for (int i = 2; i <= n; ++i)
        r *= i;
    return r;
}

} // namespace gkf
