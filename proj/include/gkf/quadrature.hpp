#pragma once

#include <functional>

namespace gkf {

struct QuadratureConfig {
    double abs_tol = 1e-9;   ///< target absolute error per integral
    int max_depth = 40;      ///< recursion depth limit for bisection
};

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;
    long evaluations = 0;
    bool converged = true;
};

/// Adaptive Gauss-Kronrod (G7,K15) on [a, b].
QuadratureResult integrate(const std::function<double(double)>& f,
                           double a, double b, const QuadratureConfig& cfg = {});

/// Tensor-adaptive double integral over [ax,bx] x [ay,by]; the inner
/// dimension is integrated to a proportionally tighter tolerance.
QuadratureResult integrate2d(const std::function<double(double, double)>& f,
                             double ax, double bx, double ay, double by,
                             const QuadratureConfig& cfg = {});

} // namespace gkf
