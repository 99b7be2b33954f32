#include "gkf/special_math.hpp"

#include <vector>

namespace gkf {

namespace {

// lgamma is thread-safe through std::lgamma on glibc for our usage; keep a
// wrapper so the incomplete-gamma code reads close to the textbook form.
double log_gamma(double a)
{
    return std::lgamma(a);
}

double gamma_q_series(double a, double x)
{
    // P(a,x) by series, then Q = 1 - P.
    double ap = a;
    double sum = 1.0 / a;
    double del = sum;
    for (int n = 0; n < 500; ++n) {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if (std::abs(del) < std::abs(sum) * 1e-16)
            break;
    }
    const double p = sum * std::exp(-x + a * std::log(x) - log_gamma(a));
    return 1.0 - p;
}

double gamma_q_cf(double a, double x)
{
    // Lentz's continued fraction for Q(a,x).
    const double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= 500; ++i) {
        const double an = -static_cast<double>(i) * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny)
            d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny)
            c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < 1e-16)
            break;
    }
    return h * std::exp(-x + a * std::log(x) - log_gamma(a));
}

} // namespace

double gamma_q(double a, double x)
{
    if (a <= 0.0)
        throw std::invalid_argument("gamma_q: shape must be positive");
    if (x < 0.0)
        throw std::invalid_argument("gamma_q: argument must be nonnegative");
    if (x == 0.0)
        return 1.0;
    return (x < a + 1.0) ? gamma_q_series(a, x) : gamma_q_cf(a, x);
}

double detr(int j, const Eigen::MatrixXd& m)
{
    const int dim = static_cast<int>(m.rows());
    if (m.cols() != dim)
        throw std::invalid_argument("detr: matrix must be square");
    if (j < 0 || j > dim)
        throw std::invalid_argument("detr: minor order out of range");
    if (j == 0)
        return 1.0;
    if (j == dim)
        return m.determinant();

    // Exact enumeration of all C(dim, j) principal minors. All use sites
    // have dim = K-1 with small K, so no asymptotics are needed.
    std::vector<int> idx(j);
    for (int i = 0; i < j; ++i)
        idx[i] = i;

    double sum = 0.0;
    Eigen::MatrixXd sub(j, j);
    while (true) {
        for (int r = 0; r < j; ++r)
            for (int c = 0; c < j; ++c)
                sub(r, c) = m(idx[r], idx[c]);
        sum += sub.determinant();

        // next combination in lexicographic order
        int i = j - 1;
        while (i >= 0 && idx[i] == dim - j + i)
            --i;
        if (i < 0)
            break;
        ++idx[i];
        for (int k = i + 1; k < j; ++k)
            idx[k] = idx[k - 1] + 1;
    }
    return sum;
}

} // namespace gkf
