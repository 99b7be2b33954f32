#include "gkf/ec_densities.hpp"

#include "gkf/special_math.hpp"

#include <cmath>
#include <stdexcept>

namespace gkf {

double rho_gaussian(int j, double u)
{
    if (j < 0)
        throw std::invalid_argument("rho_gaussian: j must be nonnegative");
    if (j == 0)
        return gaussian_tail(u);
    return std::pow(two_pi, -0.5 * (j + 1)) * hermite_prob(j - 1, u) * std::exp(-0.5 * u * u);
}

double tail_probability(const FunctionSpec& f, double u)
{
    switch (f.kind()) {
    case FunctionKind::Coordinate:
        return gaussian_tail(u);
    case FunctionKind::SumOfSquares:
        return chi_squared_tail(f.ambient_dim(), u);
    case FunctionKind::Callback:
        throw std::invalid_argument(
            "tail_probability: no closed form for Callback functions");
    }
    throw std::logic_error("tail_probability: unknown kind");
}

namespace {

/// D^{-1}-orthonormal frame spanning the orthocomplement of grad F (the
/// tangent space of the level set). Built here independently of the tube
/// module's frame so the consistency identity compares two full code paths;
/// columns are seeded in reversed order, which detr-based traces are
/// invariant to.
Eigen::MatrixXd level_set_frame(const Eigen::VectorXd& g, const HeterogeneityMatrix& d)
{
    const int n = static_cast<int>(g.size());
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
    const Eigen::MatrixXd q = qr.householderQ();
    Eigen::MatrixXd frame(n, n - 1);
    for (int i = 1; i < n; ++i)
        frame.col(n - 1 - i) = q.col(i);

    for (int i = 0; i < n - 1; ++i) {
        Eigen::VectorXd v = frame.col(i);
        for (int pass = 0; pass < 2; ++pass)
            for (int j = 0; j < i; ++j)
                v -= d.inner_q(frame.col(j), v) * frame.col(j);
        const double norm_q = std::sqrt(d.inner_q(v, v));
        if (norm_q < 1e-12)
            throw std::runtime_error("rho_via_levelset: frame construction degenerated");
        frame.col(i) = v / norm_q;
    }
    return frame;
}

QuadratureResult integrate_level_set(const DomainSet& k,
                                     const std::function<double(const Eigen::VectorXd&)>& f,
                                     const QuadratureConfig& cfg)
{
    const BoundaryChart& chart = k.chart();
    QuadratureResult out;
    if (chart.param_dim == 0) {
        for (const auto& p : chart.points)
            out.value += f(p);
        return out;
    }
    if (chart.param_dim == 1) {
        return integrate(
            [&](double t) {
                Eigen::VectorXd tv(1);
                tv[0] = t;
                return f(chart.point(tv)) * chart.hausdorff_density(tv);
            },
            chart.lo[0], chart.hi[0], cfg);
    }
    if (chart.param_dim == 2) {
        return integrate2d(
            [&](double t0, double t1) {
                Eigen::VectorXd tv(2);
                tv << t0, t1;
                return f(chart.point(tv)) * chart.hausdorff_density(tv);
            },
            chart.lo[0], chart.hi[0], chart.lo[1], chart.hi[1], cfg);
    }
    throw std::invalid_argument("rho_via_levelset: charts above 2 parameters are not supported");
}

} // namespace

double rho_via_levelset(const FunctionSpec& f, const HeterogeneityMatrix& d,
                        double u, int j, const QuadratureConfig& quad)
{
    if (j < 0)
        throw std::invalid_argument("rho_via_levelset: j must be nonnegative");
    if (d.dim() != f.ambient_dim())
        throw std::invalid_argument("rho_via_levelset: dimension mismatch");
    if (j == 0)
        return tail_probability(f, u);

    DomainSet k(f, u);
    if (k.boundary_empty())
        return 0.0;
    const int n = f.ambient_dim();

    auto integrand = [&](const Eigen::VectorXd& y) {
        const Eigen::VectorXd g = f.gradient(y);
        const double g_norm = g.norm();
        if (g_norm < 1e-12)
            throw std::runtime_error("rho_via_levelset: vanishing gradient on the level set");
        const Eigen::VectorXd dg = d.apply(g);
        const double sq = theta_norm(g, d); // |D^{1/2} grad F|
        const double weight = sq / g_norm;
        const double ratio = dg.norm() / sq;
        const double harg = dg.dot(y) / dg.norm();

        // Restricted matrix of D grad^2 F over grad F^perp in a
        // D^{-1}-orthonormal frame, scaled by |D^{1/2} grad F|^{-1}.
        Eigen::MatrixXd b;
        if (n > 1) {
            const Eigen::MatrixXd frame = level_set_frame(g, d);
            b = (frame.transpose() * f.hessian(y) * frame) / sq;
        } else {
            b = Eigen::MatrixXd(0, 0);
        }

        double sum = 0.0;
        const int m_top = std::min(j - 1, n - 1);
        for (int m = 0; m <= m_top; ++m) {
            const double sign = (m % 2 == 0) ? 1.0 : -1.0;
            sum += sign * binomial(j - 1, m) * std::pow(ratio, j - 1 - m) *
                   hermite_prob(j - 1 - m, harg) * factorial(m) * detr(m, b);
        }
        return weight * sum * gaussian_pdf_k(y);
    };

    const QuadratureResult r = integrate_level_set(k, integrand, quad);
    return std::pow(two_pi, -0.5 * j) * r.value;
}

double chi2_s2_m2(double radius, double lambda1, double lambda2,
                  const QuadratureConfig& quad)
{
    if (!(radius > 0.0) || !(lambda1 > 0.0) || !(lambda2 > 0.0))
        throw std::invalid_argument("chi2_s2_m2: radius and lambdas must be positive");

    const double rho = radius;
    const double phi_on_boundary = std::exp(-0.5 * rho * rho) / two_pi;

    // Boundary circle x = rho (cos t, sin t), outward normal of the disk
    // complement eta = -(cos t, sin t).
    auto w2 = [&](double t) { // |D^{1/2} eta|^2 = lambda1 c^2 + lambda2 s^2
        const double c = std::cos(t), s = std::sin(t);
        return lambda1 * c * c + lambda2 * s * s;
    };
    auto dn2 = [&](double t) { // |D eta|^2
        const double c = std::cos(t), s = std::sin(t);
        return lambda1 * lambda1 * c * c + lambda2 * lambda2 * s * s;
    };

    // m = 0 term: -|sigma| H_1(<x, D eta/|D eta|>) phi M*_1(dx), with
    // H_1 argument -rho (lambda1 c^2 + lambda2 s^2)/|D eta|.
    QuadratureResult t1 = integrate(
        [&](double t) {
            const double sigma_norm = std::sqrt(dn2(t) / w2(t));
            const double h1 = -rho * w2(t) / std::sqrt(dn2(t));
            return -sigma_norm * h1 * phi_on_boundary * rho;
        },
        0.0, 2.0 * M_PI, quad);

    // m = 1 term: |D^{1/2} eta| phi A_11 dH with the boundary curvature of
    // the outward field, A_11 = -lambda1 lambda2 / (rho w^3).
    QuadratureResult t2 = integrate(
        [&](double t) {
            const double w = std::sqrt(w2(t));
            const double a11 = -lambda1 * lambda2 / (rho * w * w * w);
            return w * phi_on_boundary * a11 * rho;
        },
        0.0, 2.0 * M_PI, quad);

    return t1.value + t2.value;
}

namespace {

/// rho_j from the closed form when one exists, else the level-set quadrature.
double density_j(int j, const FunctionSpec& f, const HeterogeneityMatrix& d,
                 double u, const QuadratureConfig& quad)
{
    if (j == 0)
        return tail_probability(f, u);
    if (f.kind() == FunctionKind::Coordinate)
        return std::pow(d.lambdas()[0], 0.5 * j) * rho_gaussian(j, u);
    if (f.kind() == FunctionKind::SumOfSquares && u <= 0.0)
        return 0.0; // empty boundary: excursion set is everything
    if (f.kind() == FunctionKind::SumOfSquares && f.ambient_dim() == 2 && j == 2)
        return chi2_s2_m2(std::sqrt(u), d.lambdas()[0], d.lambdas()[1], quad) / two_pi;
    return rho_via_levelset(f, d, u, j, quad);
}

} // namespace

EcDensityVector ec_density_vector(int n, const FunctionSpec& f,
                                  const HeterogeneityMatrix& d, double u,
                                  const QuadratureConfig& quad)
{
    if (n < 0 || n > 2)
        throw std::invalid_argument("ec_density_vector: manifold dimension must be <= 2");

    EcDensityVector out;
    out.u = u;
    out.values = Eigen::VectorXd::Zero(n + 1);
    for (int j = 0; j <= n; ++j)
        out.values[j] = density_j(j, f, d, u, quad);
    return out;
}

double expected_ec(const Manifold& m, const FunctionSpec& f,
                   const HeterogeneityMatrix& d, double u,
                   const QuadratureConfig& quad)
{
    if (d.dim() != f.ambient_dim())
        throw std::invalid_argument("expected_ec: dimension mismatch");
    const LkcVector l = lkc(m);
    const int n = m.dim();

    double total = 0.0;
    for (int j = 0; j <= n; ++j) {
        if (l[j] == 0.0)
            continue; // no contribution; also avoids needless quadrature
        total += l[j] * density_j(j, f, d, u, quad);
    }
    return total;
}

} // namespace gkf
