#include "gkf/quadrature.hpp"
#include "gkf/special_math.hpp"

#include <doctest.h>

#include <cmath>

using namespace gkf;

TEST_CASE("polynomials integrate exactly")
{
    auto cubic = [](double x) { return 3.0 * x * x * x - x + 2.0; };
    const QuadratureResult r = integrate(cubic, -1.0, 2.0, {});
    // antiderivative 3/4 x^4 - x^2/2 + 2x
    const double exact = (0.75 * 16 - 2.0 + 4.0) - (0.75 - 0.5 - 2.0);
    CHECK(r.value == doctest::Approx(exact).epsilon(1e-14));
    CHECK(r.converged);
}

TEST_CASE("gaussian mass on [-8, 8]")
{
    const QuadratureResult r =
        integrate([](double x) { return gaussian_pdf(x); }, -8.0, 8.0, {.abs_tol = 1e-12});
    CHECK(std::abs(r.value - 1.0) < 2e-12);
    CHECK(r.error_estimate < 1e-10);
}

TEST_CASE("oscillatory integral converges to the adaptive tolerance")
{
    const QuadratureResult r =
        integrate([](double x) { return std::sin(50.0 * x); }, 0.0, 1.0, {.abs_tol = 1e-10});
    const double exact = (1.0 - std::cos(50.0)) / 50.0;
    CHECK(r.value == doctest::Approx(exact).epsilon(1e-10));
    CHECK(r.converged);
}

TEST_CASE("2-d separable gaussian")
{
    const QuadratureResult r = integrate2d(
        [](double x, double y) { return gaussian_pdf(x) * gaussian_pdf(y); },
        -6.0, 6.0, -6.0, 6.0, {.abs_tol = 1e-9});
    CHECK(std::abs(r.value - 1.0) < 1e-8);
}
