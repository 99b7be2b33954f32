#include "gkf/special_math.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace gkf;

namespace {

// Mills-ratio continued fraction for the Gaussian upper tail,
// 1 - Phi(x) = phi(x) / (x + 1/(x + 2/(x + 3/...))), valid for x > 0.
// Independent oracle for the erfc-based implementation.
double tail_continued_fraction(double x, int depth = 60)
{
    double cf = 0.0;
    for (int k = depth; k >= 1; --k)
        cf = k / (x + cf);
    return gaussian_pdf(x) / (x + cf);
}

// k-th derivative by nested central differences with two Richardson steps.
template <typename F>
double fd_derivative(F f, double x, int k, double h)
{
    auto diff_k = [&](double step) {
        // apply the central first-difference operator k times
        std::function<double(double, int)> d = [&](double t, int order) -> double {
            if (order == 0)
                return f(t);
            return (d(t + step, order - 1) - d(t - step, order - 1)) / (2.0 * step);
        };
        return d(x, k);
    };
    const double a = diff_k(h);
    const double b = diff_k(h / 2.0);
    const double c = diff_k(h / 4.0);
    const double r1 = (4.0 * b - a) / 3.0;
    const double r2 = (4.0 * c - b) / 3.0;
    return (16.0 * r2 - r1) / 15.0;
}

// Brute-force principal-minor sum via subset bitmasks and recursive
// cofactor determinants; written independently of detr's enumeration.
double cofactor_det(const Eigen::MatrixXd& m)
{
    const int n = static_cast<int>(m.rows());
    if (n == 0)
        return 1.0;
    if (n == 1)
        return m(0, 0);
    double det = 0.0;
    double sign = 1.0;
    for (int c = 0; c < n; ++c) {
        Eigen::MatrixXd minor(n - 1, n - 1);
        for (int i = 1; i < n; ++i) {
            int jj = 0;
            for (int j = 0; j < n; ++j) {
                if (j == c)
                    continue;
                minor(i - 1, jj++) = m(i, j);
            }
        }
        det += sign * m(0, c) * cofactor_det(minor);
        sign = -sign;
    }
    return det;
}

double detr_bruteforce(int j, const Eigen::MatrixXd& m)
{
    const int n = static_cast<int>(m.rows());
    double sum = 0.0;
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        if (__builtin_popcount(mask) != j)
            continue;
        std::vector<int> idx;
        for (int i = 0; i < n; ++i)
            if (mask & (1u << i))
                idx.push_back(i);
        Eigen::MatrixXd sub(j, j);
        for (int r = 0; r < j; ++r)
            for (int c = 0; c < j; ++c)
                sub(r, c) = m(idx[r], idx[c]);
        sum += cofactor_det(sub);
    }
    return sum;
}

} // namespace

TEST_CASE("hermite basics")
{
    CHECK(hermite_prob(0, 3.7) == 1.0);
    CHECK(hermite_prob(1, -2.0) == -2.0);
    // He_2(x) = x^2 - 1 by expanding the recurrence once
    const double x = 2.0;
    CHECK(hermite_prob(2, x) == doctest::Approx(x * x - 1.0).epsilon(1e-14));
    CHECK_THROWS_AS(hermite_prob(-1, 0.0), std::invalid_argument);
}

TEST_CASE("hermite recurrence residual")
{
    for (int n = 1; n <= 20; ++n) {
        for (double x = -10.0; x <= 10.0; x += 0.5) {
            const double lhs = hermite_prob(n + 1, x);
            const double rhs = x * hermite_prob(n, x) - n * hermite_prob(n - 1, x);
            CHECK(std::abs(lhs - rhs) <= 1e-10 * std::max(1.0, std::abs(lhs)));
        }
    }
}

TEST_CASE("gaussian pdf/cdf basics")
{
    CHECK(gaussian_pdf(0.0) == doctest::Approx(0.3989422804014327).epsilon(1e-14));
    CHECK(gaussian_cdf(0.0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(gaussian_tail(0.0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(gaussian_cdf(1.0) + gaussian_tail(1.0) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("gaussian tail matches continued-fraction oracle at large x")
{
    for (double x : {4.0, 6.0, 8.0, 10.0}) {
        const double oracle = tail_continued_fraction(x);
        CHECK(gaussian_tail(x) == doctest::Approx(oracle).epsilon(1e-12));
    }
}

TEST_CASE("gaussian derivative identity")
{
    // d^k/dx^k phi = (-1)^k He_k(x) phi(x)
    for (int k = 1; k <= 4; ++k) {
        for (double x : {-1.5, -0.3, 0.0, 0.7, 2.0}) {
            const double fd = fd_derivative([](double t) { return gaussian_pdf(t); }, x, k, 0.05);
            const double exact = std::pow(-1.0, k) * hermite_prob(k, x) * gaussian_pdf(x);
            const double scale = std::max(std::abs(exact), 1e-3);
            CHECK(std::abs(fd - exact) / scale <= 1e-6);
        }
    }
}

TEST_CASE("detr trivial cases")
{
    Eigen::MatrixXd any3 = Eigen::MatrixXd::Random(3, 3);
    CHECK(detr(0, any3) == 1.0);

    Eigen::MatrixXd m(2, 2);
    m << 1.5, -2.0, 4.0, 0.25;
    CHECK(detr(1, m) == doctest::Approx(1.75).epsilon(1e-15));   // trace
    CHECK(detr(2, m) == doctest::Approx(m.determinant()).epsilon(1e-15));
    CHECK_THROWS_AS(detr(3, m), std::invalid_argument);
    CHECK_THROWS_AS(detr(-1, m), std::invalid_argument);
}

TEST_CASE("detr matches brute-force minor enumeration")
{
    std::mt19937 rng(20250811);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::MatrixXd m(4, 4);
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c)
            m(r, c) = gauss(rng);
    for (int j = 0; j <= 4; ++j)
        CHECK(detr(j, m) == doctest::Approx(detr_bruteforce(j, m)).epsilon(1e-10));
}

TEST_CASE("det(I + eps A) equals detr polynomial")
{
    std::mt19937 rng(7);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (int dim = 1; dim <= 5; ++dim) {
        Eigen::MatrixXd a(dim, dim);
        for (int r = 0; r < dim; ++r)
            for (int c = 0; c < dim; ++c)
                a(r, c) = gauss(rng);
        for (double eps : {0.1, 0.01}) {
            const double lhs =
                (Eigen::MatrixXd::Identity(dim, dim) + eps * a).determinant();
            double rhs = 0.0;
            for (int j = 0; j <= dim; ++j)
                rhs += std::pow(eps, j) * detr(j, a);
            CHECK(std::abs(lhs - rhs) <= 1e-9);
        }
    }
}

TEST_CASE("incomplete gamma against erfc and the exponential tail")
{
    // Q(1/2, x^2/2) = erfc(x / sqrt 2)
    for (double x : {0.5, 1.0, 2.0, 3.5}) {
        CHECK(gamma_q(0.5, 0.5 * x * x) ==
              doctest::Approx(std::erfc(x * M_SQRT1_2)).epsilon(1e-12));
    }
    // chi^2_2 upper tail is exp(-u/2)
    for (double u : {0.3, 1.0, 2.5, 7.0})
        CHECK(chi_squared_tail(2, u) == doctest::Approx(std::exp(-0.5 * u)).epsilon(1e-12));
    CHECK(chi_squared_tail(3, 0.0) == 1.0);
}
