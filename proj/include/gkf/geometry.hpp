#pragma once

#include <Eigen/Dense>

#include <stdexcept>

namespace gkf {

/// Supported parameter manifolds. All size parameters are strictly positive.
struct Manifold {
    enum class Kind { Interval, Rectangle, Sphere2, Circle };

    Kind kind;
    double a = 0.0; ///< Interval length / Rectangle side a / Sphere2 radius / Circle circumference
    double b = 0.0; ///< Rectangle side b

    static Manifold interval(double length);
    static Manifold rectangle(double a, double b);
    static Manifold sphere2(double radius);
    static Manifold circle(double circumference);

    int dim() const;
};

/// Intrinsic volumes (L_0 ... L_dim) of a manifold under its base metric.
using LkcVector = Eigen::VectorXd;

/// Lipschitz-Killing curvatures of the supported manifolds. Interval and
/// Rectangle use the boundary-summed intrinsic volumes; the circle carries
/// (0, c) so that chi(S^1) = 0 enters with no boundary term.
LkcVector lkc(const Manifold& m);

/// Spatial-scale correction: L_j -> nu^{j/2} L_j, the LKCs under the
/// conformally scaled metric nu * g.
LkcVector scale_lkc(const LkcVector& l, double nu);

} // namespace gkf
