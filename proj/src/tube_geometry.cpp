#include "gkf/tube_geometry.hpp"

#include "gkf/rng.hpp"
#include "gkf/special_math.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <utility>
#include <vector>

namespace gkf {

HeterogeneityMatrix::HeterogeneityMatrix(Eigen::VectorXd lambdas)
    : lambdas_(std::move(lambdas))
{
    if (lambdas_.size() < 1)
        throw std::invalid_argument("HeterogeneityMatrix: K must be >= 1");
    for (Eigen::Index i = 0; i < lambdas_.size(); ++i)
        if (!(lambdas_[i] > 0.0) || !std::isfinite(lambdas_[i]))
            throw std::invalid_argument("HeterogeneityMatrix: lambdas must be positive and finite");
}

HeterogeneityMatrix HeterogeneityMatrix::identity(int k)
{
    return HeterogeneityMatrix(Eigen::VectorXd::Ones(k));
}

Eigen::VectorXd HeterogeneityMatrix::apply(const Eigen::VectorXd& v) const
{
    return lambdas_.cwiseProduct(v);
}

Eigen::VectorXd HeterogeneityMatrix::apply_sqrt(const Eigen::VectorXd& v) const
{
    return lambdas_.cwiseSqrt().cwiseProduct(v);
}

Eigen::VectorXd HeterogeneityMatrix::apply_inverse(const Eigen::VectorXd& v) const
{
    return v.cwiseQuotient(lambdas_);
}

double HeterogeneityMatrix::inner_q(const Eigen::VectorXd& a, const Eigen::VectorXd& b) const
{
    return a.cwiseQuotient(lambdas_).dot(b);
}

double theta_norm(const Eigen::VectorXd& x, const HeterogeneityMatrix& d)
{
    if (x.size() != d.dim())
        throw std::invalid_argument("theta_norm: dimension mismatch");
    return std::sqrt(d.lambdas().cwiseProduct(x.cwiseAbs2()).sum());
}

namespace {

void check_dims(const Eigen::VectorXd& y, const DomainSet& k, const HeterogeneityMatrix& d)
{
    if (y.size() != k.ambient_dim() || d.dim() != k.ambient_dim())
        throw std::invalid_argument("tube_geometry: dimension mismatch");
}

double weighted_sq_dist(const Eigen::VectorXd& z, const Eigen::VectorXd& y,
                        const HeterogeneityMatrix& d)
{
    return (z - y).cwiseAbs2().cwiseQuotient(d.lambdas()).sum();
}

/// Boundary seed candidates for the projection grid search.
std::vector<Eigen::VectorXd> chart_grid(const BoundaryChart& chart, int per_dim)
{
    std::vector<Eigen::VectorXd> seeds;
    if (chart.param_dim == 0) {
        seeds = chart.points;
        return seeds;
    }
    if (chart.param_dim == 1) {
        for (int i = 0; i < per_dim; ++i) {
            Eigen::VectorXd t(1);
            t[0] = chart.lo[0] + (i + 0.5) / per_dim * (chart.hi[0] - chart.lo[0]);
            seeds.push_back(chart.point(t));
        }
        return seeds;
    }
    if (chart.param_dim == 2) {
        for (int i = 0; i < per_dim; ++i)
            for (int j = 0; j < per_dim; ++j) {
                Eigen::VectorXd t(2);
                t[0] = chart.lo[0] + (i + 0.5) / per_dim * (chart.hi[0] - chart.lo[0]);
                t[1] = chart.lo[1] + (j + 0.5) / per_dim * (chart.hi[1] - chart.lo[1]);
                seeds.push_back(chart.point(t));
            }
        return seeds;
    }
    throw std::invalid_argument("project_onto_K: charts above 2 parameters are not supported");
}

struct NewtonOutcome {
    Eigen::VectorXd z;
    double mu = 0.0;
    double residual = 0.0;
    int iterations = 0;
    bool converged = false;
};

/// Newton on the KKT system  D^{-1}(z - y) = mu grad F(z),  F(z) = u.
NewtonOutcome kkt_newton(const Eigen::VectorXd& y, const Eigen::VectorXd& seed,
                         const DomainSet& k, const HeterogeneityMatrix& d,
                         const ProjectionConfig& cfg)
{
    const int n = k.ambient_dim();
    const FunctionSpec& f = k.function();

    NewtonOutcome out;
    out.z = seed;
    {
        const Eigen::VectorXd g0 = f.gradient(seed);
        const double gg = g0.squaredNorm();
        out.mu = gg > 0.0 ? d.apply_inverse(seed - y).dot(g0) / gg : 0.0;
    }

    Eigen::MatrixXd jac(n + 1, n + 1);
    Eigen::VectorXd res(n + 1);
    for (out.iterations = 0; out.iterations < cfg.max_iterations; ++out.iterations) {
        const Eigen::VectorXd g = f.gradient(out.z);
        res.head(n) = d.apply_inverse(out.z - y) - out.mu * g;
        res[n] = f.value(out.z) - k.level();
        out.residual = res.lpNorm<Eigen::Infinity>();
        if (out.residual <= cfg.tol) {
            out.converged = true;
            return out;
        }

        const Eigen::MatrixXd h = f.hessian(out.z);
        jac.setZero();
        jac.topLeftCorner(n, n) = -out.mu * h;
        jac.topLeftCorner(n, n).diagonal() += d.lambdas().cwiseInverse();
        jac.topRightCorner(n, 1) = -g;
        jac.bottomLeftCorner(1, n) = g.transpose();

        const Eigen::VectorXd step = jac.partialPivLu().solve(-res);
        if (!step.allFinite())
            return out;
        out.z += step.head(n);
        out.mu += step[n];
    }
    return out;
}

} // namespace

ProjectionResult project_onto_K(const Eigen::VectorXd& y, const DomainSet& k,
                                const HeterogeneityMatrix& d,
                                const ProjectionConfig& cfg)
{
    check_dims(y, k, d);
    if (k.contains(y))
        return {y, 0.0, 0, 0.0};

    std::vector<Eigen::VectorXd> seeds = chart_grid(k.chart(), cfg.grid_seeds);
    std::sort(seeds.begin(), seeds.end(),
              [&](const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
                  return weighted_sq_dist(a, y, d) < weighted_sq_dist(b, y, d);
              });
    const double grid_best = weighted_sq_dist(seeds.front(), y, d);

    const int max_starts = std::min<int>(5, static_cast<int>(seeds.size()));
    NewtonOutcome last;
    for (int s = 0; s < max_starts; ++s) {
        NewtonOutcome o = kkt_newton(y, seeds[s], k, d, cfg);
        last = o;
        if (!o.converged)
            continue;
        if (o.mu < -1e-9)
            continue; // wrong KKT branch: z is a local max along the normal
        const double value = weighted_sq_dist(o.z, y, d);
        if (value > grid_best + 1e-9)
            continue; // converged away from the global basin
        return {o.z, value, o.iterations, o.residual};
    }

    std::ostringstream msg;
    msg << "project_onto_K: Newton failed to converge; y = [" << y.transpose()
        << "], last iterate z = [" << last.z.transpose() << "], mu = " << last.mu
        << ", residual = " << last.residual << ", iterations = " << last.iterations
        << ", seeds tried = " << max_starts;
    throw std::runtime_error(msg.str());
}

bool tube_membership(const Eigen::VectorXd& y, const DomainSet& k,
                     const HeterogeneityMatrix& d, double eps,
                     const ProjectionConfig& cfg)
{
    if (!(eps > 0.0))
        throw std::invalid_argument("tube_membership: eps must be positive");
    if (k.contains(y))
        return true;
    return project_onto_K(y, k, d, cfg).value <= eps * eps;
}

Eigen::MatrixXd q_orthonormal_tangent_frame(const Eigen::VectorXd& z, const DomainSet& k,
                                            const HeterogeneityMatrix& d)
{
    const int n = k.ambient_dim();
    const Eigen::VectorXd g = k.function().gradient(z);
    if (g.norm() < 1e-12)
        throw std::runtime_error("shape_matrix: degenerate frame (gradient below 1e-12)");

    // Euclidean orthonormal complement of grad F via a Householder QR,
    // then Gram-Schmidt in the D^{-1} inner product.
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
    const Eigen::MatrixXd q = qr.householderQ();
    Eigen::MatrixXd frame(n, n - 1);
    for (int i = 1; i < n; ++i)
        frame.col(i - 1) = q.col(i);

    for (int i = 0; i < n - 1; ++i) {
        Eigen::VectorXd v = frame.col(i);
        for (int pass = 0; pass < 2; ++pass)
            for (int j = 0; j < i; ++j)
                v -= d.inner_q(frame.col(j), v) * frame.col(j);
        const double norm_q = std::sqrt(d.inner_q(v, v));
        if (norm_q < 1e-12)
            throw std::runtime_error("shape_matrix: frame construction degenerated");
        frame.col(i) = v / norm_q;
    }
    return frame;
}

Eigen::MatrixXd shape_matrix(const Eigen::VectorXd& z, const DomainSet& k,
                             const HeterogeneityMatrix& d)
{
    check_dims(z, k, d);
    const int n = k.ambient_dim();
    if (n == 1)
        return Eigen::MatrixXd(0, 0);

    const Eigen::VectorXd g = k.function().gradient(z);
    if (g.norm() < 1e-12)
        throw std::runtime_error("shape_matrix: degenerate frame (gradient below 1e-12)");
    const Eigen::MatrixXd frame = q_orthonormal_tangent_frame(z, k, d);
    const Eigen::MatrixXd h = k.function().hessian(z);

    // A_ij = <grad_{E_i} eta, E_j> with eta = -grad F/|grad F| the outward
    // normal; the normalization derivative drops against tangent vectors.
    const double g_theta = theta_norm(g, d);
    return -(frame.transpose() * h * frame) / g_theta;
}

double surface_measure_density(int j, const Eigen::VectorXd& z,
                               const DomainSet& k, const HeterogeneityMatrix& d)
{
    if (j < 1)
        throw std::invalid_argument("surface_measure_density: j must be >= 1");
    if (j > k.ambient_dim())
        return 0.0;
    const Eigen::MatrixXd a = shape_matrix(z, k, d);
    return factorial(j - 1) * detr(j - 1, a);
}

namespace {

/// Integrates an ambient-point function against Hausdorff measure on the
/// charted boundary.
QuadratureResult integrate_over_boundary(const DomainSet& k,
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
    throw std::invalid_argument("gmf: charts above 2 parameters are not supported");
}

/// Gaussian measure of K. Closed forms for the built-in kinds; closed-curve
/// Callback charts in K = 2 go through the divergence theorem with the
/// radial field V = (1 - exp(-r^2/2)) x / (2 pi r^2), div V = phi_2.
std::pair<double, double> gaussian_measure_of_K(const DomainSet& k,
                                                const QuadratureConfig& cfg)
{
    const FunctionSpec& f = k.function();
    switch (f.kind()) {
    case FunctionKind::Coordinate:
        return {gaussian_tail(k.level()), 0.0};
    case FunctionKind::SumOfSquares:
        if (k.level() <= 0.0)
            return {1.0, 0.0};
        return {chi_squared_tail(f.ambient_dim(), k.level()), 0.0};
    case FunctionKind::Callback: {
        if (f.ambient_dim() != 2 || !k.chart().closed_curve)
            throw std::invalid_argument(
                "gmf: Gaussian measure for Callback needs a closed-curve chart in K = 2");
        // Unbounded K contributes the total mass through the far field.
        bool unbounded = false;
        for (int i = 0; i < 8; ++i) {
            const double a = 2.0 * M_PI * i / 8.0;
            Eigen::VectorXd far(2);
            far << 50.0 * std::cos(a), 50.0 * std::sin(a);
            if (k.contains(far))
                unbounded = true;
        }
        QuadratureResult flux = integrate_over_boundary(
            k,
            [&](const Eigen::VectorXd& x) {
                const double r = x.norm();
                if (r < 1e-12)
                    return 0.0;
                const double h = (1.0 - std::exp(-0.5 * r * r)) / (two_pi * r);
                return h * x.dot(k.outward_normal(x)) / r;
            },
            cfg);
        return {(unbounded ? 1.0 : 0.0) + flux.value, flux.error_estimate};
    }
    }
    throw std::logic_error("gmf: unknown function kind");
}

} // namespace

GmfVector gmf(const DomainSet& k, const HeterogeneityMatrix& d, int max_order,
              const QuadratureConfig& quad)
{
    if (d.dim() != k.ambient_dim())
        throw std::invalid_argument("gmf: dimension mismatch");
    if (max_order < 0 || max_order > 8)
        throw std::invalid_argument("gmf: max_order out of range [0, 8]");

    const int n = k.ambient_dim();
    GmfVector out;
    out.values = Eigen::VectorXd::Zero(max_order + 1);
    out.errors = Eigen::VectorXd::Zero(max_order + 1);

    auto [m0, m0_err] = gaussian_measure_of_K(k, quad);
    if (m0 < -1e-12 || m0 > 1.0 + 1e-12)
        throw std::runtime_error("gmf: M_0 outside [0, 1]");
    out.values[0] = std::clamp(m0, 0.0, 1.0);
    out.errors[0] = m0_err;

    if (k.boundary_empty())
        return out;

    for (int l = 1; l <= max_order; ++l) {
        auto integrand = [&](const Eigen::VectorXd& x) {
            const Eigen::VectorXd eta = k.outward_normal(x);
            const Eigen::VectorXd d_eta = d.apply(eta);
            const double sq = theta_norm(eta, d);       // |D^{1/2} eta|, |eta| = 1
            const double ratio = d_eta.norm() / sq;     // |D eta| / |D^{1/2} eta|
            const double harg = x.dot(d_eta) / d_eta.norm();

            const Eigen::MatrixXd a = shape_matrix(x, k, d);
            double sum = 0.0;
            const int m_top = std::min(l - 1, n - 1); // M*_{m+1} vanishes past m+1 = K
            for (int m = 0; m <= m_top; ++m) {
                const int p = l - 1 - m;
                const double sign = (p % 2 == 0) ? 1.0 : -1.0;
                sum += binomial(l - 1, m) * sign * std::pow(ratio, p) *
                       hermite_prob(p, harg) * factorial(m) * detr(m, a);
            }
            return sq * sum * gaussian_pdf_k(x);
        };
        QuadratureResult r = integrate_over_boundary(k, integrand, quad);
        out.values[l] = r.value;
        out.errors[l] = r.error_estimate;
    }
    return out;
}

McEstimate mc_tube_volume(const DomainSet& k, const HeterogeneityMatrix& d,
                          double eps, long n, std::uint64_t seed, int n_threads)
{
    if (n < 1000)
        throw std::invalid_argument("mc_tube_volume: need at least 1000 trials");
    if (!(eps > 0.0))
        throw std::invalid_argument("mc_tube_volume: eps must be positive");
    if (d.dim() != k.ambient_dim())
        throw std::invalid_argument("mc_tube_volume: dimension mismatch");

    const long block_size = 16384;
    const long n_blocks = (n + block_size - 1) / block_size;
    if (n_threads <= 0)
        n_threads = std::max(1u, std::thread::hardware_concurrency());
    n_threads = static_cast<int>(std::min<long>(n_threads, n_blocks));

    std::atomic<long> next_block{0};
    std::atomic<long> hits{0};
    std::exception_ptr worker_error;
    std::mutex error_mutex;

    auto worker = [&]() {
        const int dim = k.ambient_dim();
        Eigen::VectorXd y(dim);
        try {
            for (;;) {
                const long b = next_block.fetch_add(1);
                if (b >= n_blocks)
                    break;
                RandomStream stream(derive_seed(seed, static_cast<std::uint64_t>(b)));
                const long lo = b * block_size;
                const long hi = std::min(n, lo + block_size);
                long local = 0;
                for (long i = lo; i < hi; ++i) {
                    for (int c = 0; c < dim; ++c)
                        y[c] = stream.next_gaussian();
                    try {
                        if (tube_membership(y, k, d, eps))
                            ++local;
                    } catch (const std::exception& e) {
                        std::ostringstream msg;
                        msg << "mc_tube_volume: projection failed at sample " << i
                            << ", y = [" << y.transpose() << "]: " << e.what();
                        throw std::runtime_error(msg.str());
                    }
                }
                hits.fetch_add(local);
            }
        } catch (...) {
            std::lock_guard<std::mutex> lock(error_mutex);
            if (!worker_error)
                worker_error = std::current_exception();
        }
    };

    std::vector<std::thread> pool;
    for (int t = 0; t < n_threads; ++t)
        pool.emplace_back(worker);
    for (auto& t : pool)
        t.join();
    if (worker_error)
        std::rethrow_exception(worker_error);

    const double p = static_cast<double>(hits.load()) / static_cast<double>(n);
    const double se = std::sqrt(std::max(p * (1.0 - p), 1e-300) / static_cast<double>(n));
    return {p, se, n};
}

} // namespace gkf
