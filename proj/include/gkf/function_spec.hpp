#pragma once

#include <Eigen/Dense>

#include <functional>
#include <stdexcept>
#include <utility>

namespace gkf {

enum class FunctionKind { Coordinate, SumOfSquares, Callback };

/// Subordinating function F : R^K -> R together with its gradient and
/// Hessian. Coordinate is F(x) = x_1, SumOfSquares is F(x) = sum x_k^2;
/// Callback carries user-supplied evaluators.
class FunctionSpec {
public:
    using ValueFn = std::function<double(const Eigen::VectorXd&)>;
    using GradFn = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;
    using HessFn = std::function<Eigen::MatrixXd(const Eigen::VectorXd&)>;

    static FunctionSpec coordinate(int ambient_dim);
    static FunctionSpec sum_of_squares(int ambient_dim);
    static FunctionSpec callback(int ambient_dim, ValueFn value, GradFn grad, HessFn hess);

    FunctionKind kind() const { return kind_; }
    int ambient_dim() const { return ambient_dim_; }

    double value(const Eigen::VectorXd& x) const;
    Eigen::VectorXd gradient(const Eigen::VectorXd& x) const;
    Eigen::MatrixXd hessian(const Eigen::VectorXd& x) const;

private:
    FunctionSpec(FunctionKind kind, int ambient_dim)
        : kind_(kind), ambient_dim_(ambient_dim)
    {
        if (ambient_dim < 1)
            throw std::invalid_argument("FunctionSpec: ambient dimension must be >= 1");
    }

    void check_dim(const Eigen::VectorXd& x) const
    {
        if (x.size() != ambient_dim_)
            throw std::invalid_argument("FunctionSpec: input dimension mismatch");
    }

    FunctionKind kind_;
    int ambient_dim_;
    ValueFn value_fn_;
    GradFn grad_fn_;
    HessFn hess_fn_;
};

} // namespace gkf
