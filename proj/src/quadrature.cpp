#include "gkf/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace gkf {

namespace {

// QUADPACK dqk15 abscissae/weights (positive half; node 7 is the midpoint).
constexpr double xgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};

constexpr double wgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};

constexpr double wg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct PanelEstimate {
    double kronrod;
    double error;
};

PanelEstimate gk15(const std::function<double(double)>& f, double a, double b)
{
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);

    const double fc = f(c);
    double result_g = wg[3] * fc;
    double result_k = wgk[7] * fc;

    double fv[7];
    for (int i = 0; i < 7; ++i) {
        const double dx = h * xgk[i];
        const double f1 = f(c - dx);
        const double f2 = f(c + dx);
        fv[i] = f1 + f2;
        result_k += wgk[i] * fv[i];
        if (i % 2 == 1) // nodes 1,3,5 are the Gauss-7 points
            result_g += wg[i / 2] * fv[i];
    }

    const double kronrod = result_k * h;
    const double gauss = result_g * h;
    const double err = std::abs(kronrod - gauss);
    // QUADPACK-style sharpening of the raw difference.
    const double scaled = err * std::sqrt(err / (std::abs(kronrod) + 1e-300));
    return {kronrod, std::min(err, std::max(scaled, 1e-18 * std::abs(kronrod)))};
}

void adapt(const std::function<double(double)>& f, double a, double b,
           double tol, int depth, QuadratureResult& out)
{
    const PanelEstimate e = gk15(f, a, b);
    out.evaluations += 15;
    if (e.error <= tol || depth <= 0) {
        out.value += e.kronrod;
        out.error_estimate += e.error;
        if (e.error > tol)
            out.converged = false;
        return;
    }
    const double c = 0.5 * (a + b);
    adapt(f, a, c, 0.5 * tol, depth - 1, out);
    adapt(f, c, b, 0.5 * tol, depth - 1, out);
}

} // namespace

QuadratureResult integrate(const std::function<double(double)>& f,
                           double a, double b, const QuadratureConfig& cfg)
{
    if (!(a < b))
        throw std::invalid_argument("integrate: empty or inverted interval");
    QuadratureResult out;
    adapt(f, a, b, cfg.abs_tol, cfg.max_depth, out);
    return out;
}

QuadratureResult integrate2d(const std::function<double(double, double)>& f,
                             double ax, double bx, double ay, double by,
                             const QuadratureConfig& cfg)
{
    QuadratureConfig inner_cfg = cfg;
    inner_cfg.abs_tol = cfg.abs_tol / (bx - ax);

    QuadratureResult out;
    double inner_err = 0.0;
    bool inner_ok = true;
    auto outer = [&](double x) {
        QuadratureResult r = integrate([&](double y) { return f(x, y); },
                                       ay, by, inner_cfg);
        out.evaluations += r.evaluations;
        inner_err = std::max(inner_err, r.error_estimate);
        inner_ok = inner_ok && r.converged;
        return r.value;
    };
    QuadratureResult o = integrate(outer, ax, bx, cfg);
    out.value = o.value;
    out.error_estimate = o.error_estimate + inner_err * (bx - ax);
    out.converged = o.converged && inner_ok;
    return out;
}

} // namespace gkf
