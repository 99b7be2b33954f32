#include "gkf/geometry.hpp"

#include <doctest.h>

#include <cmath>

using namespace gkf;

namespace {

// Grid-area oracle for the Euclidean tube of a rectangle [0,a]x[0,b];
// cross-checks the Steiner expansion area + perimeter*eps + pi eps^2 that
// the LKC triple (1, a+b, ab) encodes.
double tube_area_grid(double a, double b, double eps, int n = 2400)
{
    const double lox = -eps - 0.25, hix = a + eps + 0.25;
    const double loy = -eps - 0.25, hiy = b + eps + 0.25;
    const double hx = (hix - lox) / n, hy = (hiy - loy) / n;
    long hits = 0;
    for (int i = 0; i < n; ++i) {
        const double x = lox + (i + 0.5) * hx;
        const double dx = std::max({0.0 - x, x - a, 0.0});
        for (int j = 0; j < n; ++j) {
            const double y = loy + (j + 0.5) * hy;
            const double dy = std::max({0.0 - y, y - b, 0.0});
            if (dx * dx + dy * dy <= eps * eps)
                ++hits;
        }
    }
    return hits * hx * hy;
}

} // namespace

TEST_CASE("lkc catalogue")
{
    const LkcVector sphere = lkc(Manifold::sphere2(1.0));
    CHECK(sphere.size() == 3);
    CHECK(sphere[0] == 2.0);
    CHECK(sphere[1] == 0.0);
    CHECK(sphere[2] == doctest::Approx(4.0 * M_PI).epsilon(1e-15));

    const LkcVector seg = lkc(Manifold::interval(3.25));
    CHECK(seg[0] == 1.0);
    CHECK(seg[1] == 3.25);

    const LkcVector rect = lkc(Manifold::rectangle(2.0, 0.75));
    CHECK(rect[0] == 1.0);
    CHECK(rect[1] == doctest::Approx(2.75));
    CHECK(rect[2] == doctest::Approx(1.5));

    const LkcVector circ = lkc(Manifold::circle(5.0));
    CHECK(circ[0] == 0.0);
    CHECK(circ[1] == 5.0);

    CHECK_THROWS_AS(Manifold::sphere2(-1.0), std::invalid_argument);
    CHECK_THROWS_AS(Manifold::rectangle(1.0, 0.0), std::invalid_argument);
}

TEST_CASE("rectangle lkc against the tube-area grid oracle")
{
    const double a = 1.3, b = 0.8;
    const LkcVector l = lkc(Manifold::rectangle(a, b));
    for (double eps : {0.2, 0.35}) {
        const double steiner = l[2] + 2.0 * l[1] * eps + M_PI * l[0] * eps * eps;
        const double grid = tube_area_grid(a, b, eps);
        CHECK(grid == doctest::Approx(steiner).epsilon(5e-3));
    }
}

TEST_CASE("rectangle additivity across a shared edge")
{
    // [0,a1]x[0,b] union [a1, a1+a2]x[0,b]; intersection is a segment {a1}x[0,b].
    const double a1 = 1.1, a2 = 0.6, b = 0.9;
    const LkcVector whole = lkc(Manifold::rectangle(a1 + a2, b));
    const LkcVector left = lkc(Manifold::rectangle(a1, b));
    const LkcVector right = lkc(Manifold::rectangle(a2, b));
    const LkcVector seam = lkc(Manifold::interval(b)); // (1, b)

    CHECK(whole[0] == doctest::Approx(left[0] + right[0] - seam[0]).epsilon(1e-14));
    CHECK(whole[1] == doctest::Approx(left[1] + right[1] - seam[1]).epsilon(1e-14));
    CHECK(whole[2] == doctest::Approx(left[2] + right[2] - 0.0).epsilon(1e-14));
}

TEST_CASE("lkc homogeneity under scaling")
{
    const double scale = 1.7;
    for (int which = 0; which < 2; ++which) {
        const Manifold m = which == 0 ? Manifold::interval(2.0) : Manifold::rectangle(1.2, 0.5);
        const Manifold ms = which == 0 ? Manifold::interval(2.0 * scale)
                                       : Manifold::rectangle(1.2 * scale, 0.5 * scale);
        const LkcVector l = lkc(m), ls = lkc(ms);
        for (int j = 0; j < l.size(); ++j)
            CHECK(ls[j] == doctest::Approx(std::pow(scale, j) * l[j]).epsilon(1e-12));
    }
}

TEST_CASE("scale_lkc")
{
    LkcVector sphere = lkc(Manifold::sphere2(1.0));
    const LkcVector same = scale_lkc(sphere, 1.0);
    CHECK((same - sphere).norm() == 0.0);

    LkcVector seg(2);
    seg << 1.0, 4.0;
    const LkcVector scaled = scale_lkc(seg, 4.0);
    CHECK(scaled[0] == 1.0);
    CHECK(scaled[1] == doctest::Approx(8.0));

    LkcVector rect(3);
    const double a = 0.7, b = 2.2, lam = 3.0;
    rect << 1.0, a + b, a * b;
    const LkcVector r = scale_lkc(rect, lam);
    CHECK(r[0] == 1.0);
    CHECK(r[1] == doctest::Approx(std::sqrt(lam) * (a + b)).epsilon(1e-14));
    CHECK(r[2] == doctest::Approx(lam * a * b).epsilon(1e-14));

    CHECK_THROWS_AS(scale_lkc(rect, 0.0), std::invalid_argument);
}
