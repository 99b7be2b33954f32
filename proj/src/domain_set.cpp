#include "gkf/domain_set.hpp"

#include <cmath>
#include <stdexcept>

namespace gkf {

DomainSet::DomainSet(FunctionSpec f, double u, double chart_truncation)
    : f_(std::move(f)), u_(u)
{
    build_default_chart(chart_truncation);
    validate_chart();
}

DomainSet::DomainSet(FunctionSpec f, double u, BoundaryChart chart)
    : f_(std::move(f)), u_(u), chart_(std::move(chart))
{
    if (f_.kind() != FunctionKind::Callback)
        throw std::invalid_argument("DomainSet: explicit charts are for Callback functions");
    validate_chart();
}

void DomainSet::build_default_chart(double truncation)
{
    const int k = f_.ambient_dim();
    switch (f_.kind()) {
    case FunctionKind::Coordinate: {
        chart_.param_dim = k - 1;
        if (k == 1) {
            Eigen::VectorXd p(1);
            p << u_;
            chart_.points.push_back(p);
            return;
        }
        if (k > 3)
            throw std::invalid_argument(
                "DomainSet: hyperplane chart quadrature is supported for K <= 3");
        chart_.lo = Eigen::VectorXd::Constant(k - 1, -truncation);
        chart_.hi = Eigen::VectorXd::Constant(k - 1, truncation);
        const double level = u_;
        chart_.point = [k, level](const Eigen::VectorXd& t) {
            Eigen::VectorXd x(k);
            x[0] = level;
            x.tail(k - 1) = t;
            return x;
        };
        chart_.hausdorff_density = [](const Eigen::VectorXd&) { return 1.0; };
        return;
    }
    case FunctionKind::SumOfSquares: {
        if (u_ <= 0.0) {
            // K is all of R^K; no boundary to chart.
            boundary_empty_ = true;
            chart_.param_dim = 0;
            return;
        }
        if (k != 2)
            throw std::invalid_argument(
                "DomainSet: sum-of-squares boundary chart is supported for K = 2");
        const double rho = std::sqrt(u_);
        chart_.param_dim = 1;
        chart_.lo = Eigen::VectorXd::Zero(1);
        chart_.hi = Eigen::VectorXd::Constant(1, 2.0 * M_PI);
        chart_.point = [rho](const Eigen::VectorXd& t) {
            Eigen::VectorXd x(2);
            x << rho * std::cos(t[0]), rho * std::sin(t[0]);
            return x;
        };
        chart_.hausdorff_density = [rho](const Eigen::VectorXd&) { return rho; };
        chart_.closed_curve = true;
        return;
    }
    case FunctionKind::Callback:
        throw std::invalid_argument("DomainSet: Callback functions require a user-supplied chart");
    }
}

void DomainSet::validate_chart() const
{
    if (boundary_empty_)
        return;
    if (chart_.param_dim == 0) {
        if (chart_.points.empty())
            throw std::invalid_argument("DomainSet: point chart has no points");
        for (const auto& p : chart_.points)
            if (std::abs(f_.value(p) - u_) > 1e-10)
                throw std::invalid_argument("DomainSet: chart point off the level set");
        return;
    }
    if (!chart_.point || !chart_.hausdorff_density)
        throw std::invalid_argument("DomainSet: chart must provide point and density maps");
    // Spot-check that charted points sit on the level set.
    const int probes = 7;
    for (int i = 0; i < probes; ++i) {
        const double s = (i + 0.5) / probes;
        const Eigen::VectorXd t = chart_.lo + s * (chart_.hi - chart_.lo);
        const Eigen::VectorXd x = chart_.point(t);
        if (std::abs(f_.value(x) - u_) > 1e-10)
            throw std::invalid_argument("DomainSet: chart point off the level set");
    }
}

Eigen::VectorXd DomainSet::outward_normal(const Eigen::VectorXd& x) const
{
    Eigen::VectorXd g = f_.gradient(x);
    const double norm = g.norm();
    if (norm < 1e-12)
        throw std::runtime_error("DomainSet: vanishing gradient on the boundary");
    return -g / norm;
}

double DomainSet::sum_of_squares_radius() const
{
    if (f_.kind() != FunctionKind::SumOfSquares)
        throw std::logic_error("DomainSet: radius is defined for sum-of-squares sets");
    if (u_ <= 0.0)
        throw std::domain_error("DomainSet: radius requires a positive level");
    return std::sqrt(u_);
}

} // namespace gkf
