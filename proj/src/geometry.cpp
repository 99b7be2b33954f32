#include "gkf/geometry.hpp"

#include <cmath>

namespace gkf {

namespace {

void require_positive(double v, const char* what)
{
    if (!(v > 0.0))
        throw std::invalid_argument(std::string(what) + " must be strictly positive");
}

} // namespace

Manifold Manifold::interval(double length)
{
    require_positive(length, "interval length");
    return {Kind::Interval, length, 0.0};
}

Manifold Manifold::rectangle(double a, double b)
{
    require_positive(a, "rectangle side a");
    require_positive(b, "rectangle side b");
    return {Kind::Rectangle, a, b};
}

Manifold Manifold::sphere2(double radius)
{
    require_positive(radius, "sphere radius");
    return {Kind::Sphere2, radius, 0.0};
}

Manifold Manifold::circle(double circumference)
{
    require_positive(circumference, "circle circumference");
    return {Kind::Circle, circumference, 0.0};
}

int Manifold::dim() const
{
    switch (kind) {
    case Kind::Interval:
    case Kind::Circle:
        return 1;
    case Kind::Rectangle:
    case Kind::Sphere2:
        return 2;
    }
    throw std::logic_error("Manifold::dim: unknown kind");
}

LkcVector lkc(const Manifold& m)
{
    LkcVector l(m.dim() + 1);
    switch (m.kind) {
    case Manifold::Kind::Interval:
        l << 1.0, m.a;
        return l;
    case Manifold::Kind::Rectangle:
        l << 1.0, m.a + m.b, m.a * m.b;
        return l;
    case Manifold::Kind::Sphere2:
        l << 2.0, 0.0, 4.0 * M_PI * m.a * m.a;
        return l;
    case Manifold::Kind::Circle:
        l << 0.0, m.a;
        return l;
    }
    throw std::invalid_argument("lkc: unsupported manifold kind");
}

LkcVector scale_lkc(const LkcVector& l, double nu)
{
    if (!(nu > 0.0))
        throw std::invalid_argument("scale_lkc: nu must be positive");
    LkcVector out(l.size());
    for (Eigen::Index j = 0; j < l.size(); ++j)
        out[j] = std::pow(nu, 0.5 * static_cast<double>(j)) * l[j];
    return out;
}

} // namespace gkf
