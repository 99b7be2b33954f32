#pragma once

#include "gkf/function_spec.hpp"

#include <Eigen/Dense>

#include <functional>

namespace gkf {

/// Chart mapping a low-dimensional parameter box onto the boundary
/// F^{-1}{u}. param_dim == 0 means the boundary is a finite point set
/// (counting measure); integration then sums over the points.
struct BoundaryChart {
    int param_dim = 0;
    Eigen::VectorXd lo, hi; ///< parameter box (size param_dim)
    std::function<Eigen::VectorXd(const Eigen::VectorXd&)> point;
    std::function<double(const Eigen::VectorXd&)> hausdorff_density;
    std::vector<Eigen::VectorXd> points; ///< used when param_dim == 0
    bool closed_curve = false; ///< chart traces a closed curve (K = 2)
};

/// The domain set K = F^{-1}[u, infinity) with a parametrized boundary.
/// The outward unit normal is -grad F / |grad F| (F increases into K).
class DomainSet {
public:
    /// Builds the default chart: hyperplane grid for Coordinate (K <= 3),
    /// boundary-circle angle for SumOfSquares (K = 2).
    DomainSet(FunctionSpec f, double u, double chart_truncation = 8.0);

    /// Callback route: the caller supplies the chart.
    DomainSet(FunctionSpec f, double u, BoundaryChart chart);

    const FunctionSpec& function() const { return f_; }
    double level() const { return u_; }
    const BoundaryChart& chart() const { return chart_; }
    int ambient_dim() const { return f_.ambient_dim(); }

    bool contains(const Eigen::VectorXd& x) const { return f_.value(x) >= u_; }

    /// Outward unit normal at a boundary point.
    Eigen::VectorXd outward_normal(const Eigen::VectorXd& x) const;

    /// Boundary-circle radius sqrt(u) in the sum-of-squares convention.
    double sum_of_squares_radius() const;

    /// True when an empty boundary makes all boundary integrals vanish
    /// (sum of squares with u <= 0: K is the whole space).
    bool boundary_empty() const { return boundary_empty_; }

private:
    void build_default_chart(double truncation);
    void validate_chart() const;

    FunctionSpec f_;
    double u_;
    BoundaryChart chart_;
    bool boundary_empty_ = false;
};

} // namespace gkf
