#include "gkf/spherical_harmonics.hpp"

#include <cmath>
#include <stdexcept>
#include <thread>
#include <vector>

namespace gkf {

void real_sh_row(int lmax, const Eigen::Vector3d& n, double* out)
{
    if (lmax < 0)
        throw std::invalid_argument("real_sh_row: lmax must be nonnegative");

    const double ct = n.z();                               // cos(theta)
    const double st = std::hypot(n.x(), n.y());            // sin(theta) >= 0
    const double phi = std::atan2(n.y(), n.x());
    const double sqrt2 = 1.4142135623730950488;

    // pbar[m] holds Pbar_{l,m} for the current degree l; prev/prev2 the two
    // degrees below. Normalization: sum_m (contributions)^2 = (2l+1)/(4 pi).
    std::vector<double> pbar(lmax + 1), prev(lmax + 1, 0.0), prev2(lmax + 1, 0.0);

    for (int l = 0; l <= lmax; ++l) {
        if (l == 0) {
            pbar[0] = 0.28209479177387814347; // 1/sqrt(4 pi)
        } else {
            for (int m = 0; m <= l - 2; ++m) {
                const double a = std::sqrt((4.0 * l * l - 1.0) /
                                           (static_cast<double>(l - m) * (l + m)));
                const double b = std::sqrt((static_cast<double>(l - 1 - m) * (l - 1 + m)) /
                                           (4.0 * (l - 1.0) * (l - 1.0) - 1.0));
                pbar[m] = a * (ct * prev[m] - b * prev2[m]);
            }
            pbar[l - 1] = ct * std::sqrt(2.0 * l + 1.0) * prev[l - 1];
            pbar[l] = st * std::sqrt((2.0 * l + 1.0) / (2.0 * l)) * prev[l - 1];
        }

        out[sh_index(l, 0)] = pbar[0];
        double cm = 1.0, sm = 0.0; // cos(m phi), sin(m phi) by recurrence
        const double cp = std::cos(phi), sp = std::sin(phi);
        for (int m = 1; m <= l; ++m) {
            const double c = cm * cp - sm * sp;
            const double s = sm * cp + cm * sp;
            cm = c;
            sm = s;
            out[sh_index(l, m)] = sqrt2 * pbar[m] * cm;
            out[sh_index(l, -m)] = sqrt2 * pbar[m] * sm;
        }

        std::swap(prev2, prev);
        std::swap(prev, pbar);
    }
}

Eigen::MatrixXd real_sh_basis(int lmax,
                              const Eigen::Matrix<double, Eigen::Dynamic, 3>& vertices,
                              int n_threads)
{
    const long nv = vertices.rows();
    Eigen::MatrixXd basis(nv, sh_count(lmax));

    if (n_threads <= 0)
        n_threads = std::max(1u, std::thread::hardware_concurrency());
    n_threads = static_cast<int>(std::min<long>(n_threads, nv));

    auto fill_range = [&](long lo, long hi) {
        // Row-major staging buffer so real_sh_row writes contiguously.
        std::vector<double> row(sh_count(lmax));
        for (long v = lo; v < hi; ++v) {
            real_sh_row(lmax, vertices.row(v).transpose(), row.data());
            for (int c = 0; c < sh_count(lmax); ++c)
                basis(v, c) = row[c];
        }
    };

    std::vector<std::thread> pool;
    const long chunk = (nv + n_threads - 1) / n_threads;
    for (int t = 0; t < n_threads; ++t) {
        const long lo = t * chunk;
        const long hi = std::min(nv, lo + chunk);
        if (lo < hi)
            pool.emplace_back(fill_range, lo, hi);
    }
    for (auto& t : pool)
        t.join();
    return basis;
}

} // namespace gkf
