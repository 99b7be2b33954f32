#include "gkf/function_spec.hpp"

namespace gkf {

FunctionSpec FunctionSpec::coordinate(int ambient_dim)
{
    return FunctionSpec(FunctionKind::Coordinate, ambient_dim);
}

FunctionSpec FunctionSpec::sum_of_squares(int ambient_dim)
{
    return FunctionSpec(FunctionKind::SumOfSquares, ambient_dim);
}

FunctionSpec FunctionSpec::callback(int ambient_dim, ValueFn value, GradFn grad, HessFn hess)
{
    FunctionSpec f(FunctionKind::Callback, ambient_dim);
    if (!value || !grad || !hess)
        throw std::invalid_argument("FunctionSpec::callback: all evaluators are required");
    f.value_fn_ = std::move(value);
    f.grad_fn_ = std::move(grad);
    f.hess_fn_ = std::move(hess);
    return f;
}

double FunctionSpec::value(const Eigen::VectorXd& x) const
{
    check_dim(x);
    switch (kind_) {
    case FunctionKind::Coordinate:
        return x[0];
    case FunctionKind::SumOfSquares:
        return x.squaredNorm();
    case FunctionKind::Callback:
        return value_fn_(x);
    }
    throw std::logic_error("FunctionSpec::value: unknown kind");
}

Eigen::VectorXd FunctionSpec::gradient(const Eigen::VectorXd& x) const
{
    check_dim(x);
    switch (kind_) {
    case FunctionKind::Coordinate: {
        Eigen::VectorXd g = Eigen::VectorXd::Zero(ambient_dim_);
        g[0] = 1.0;
        return g;
    }
    case FunctionKind::SumOfSquares:
        return 2.0 * x;
    case FunctionKind::Callback:
        return grad_fn_(x);
    }
    throw std::logic_error("FunctionSpec::gradient: unknown kind");
}

Eigen::MatrixXd FunctionSpec::hessian(const Eigen::VectorXd& x) const
{
    check_dim(x);
    switch (kind_) {
    case FunctionKind::Coordinate:
        return Eigen::MatrixXd::Zero(ambient_dim_, ambient_dim_);
    case FunctionKind::SumOfSquares:
        return 2.0 * Eigen::MatrixXd::Identity(ambient_dim_, ambient_dim_);
    case FunctionKind::Callback:
        return hess_fn_(x);
    }
    throw std::logic_error("FunctionSpec::hessian: unknown kind");
}

} // namespace gkf
