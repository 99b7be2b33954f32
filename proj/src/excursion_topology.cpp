#include "gkf/excursion_topology.hpp"

#include "gkf/rng.hpp"

#include <atomic>
#include <cmath>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace gkf {

namespace {

/// Per-vertex values of F over the sample matrix, with fast paths for the
/// built-in kinds (the generic row-copy route is too slow inside MC loops).
Eigen::VectorXd field_values(const Eigen::MatrixXd& values, const FunctionSpec& f)
{
    if (values.cols() != f.ambient_dim())
        throw std::invalid_argument("excursion_mask: component count mismatch");
    switch (f.kind()) {
    case FunctionKind::Coordinate:
        return values.col(0);
    case FunctionKind::SumOfSquares:
        return values.rowwise().squaredNorm();
    case FunctionKind::Callback: {
        Eigen::VectorXd out(values.rows());
        for (long v = 0; v < values.rows(); ++v)
            out[v] = f.value(values.row(v).transpose());
        return out;
    }
    }
    throw std::logic_error("excursion_mask: unknown kind");
}

ExcursionMask mask_from_values(const Eigen::VectorXd& fv, double u, bool strict)
{
    ExcursionMask mask;
    mask.level = u;
    mask.above.resize(static_cast<std::size_t>(fv.size()));
    for (long v = 0; v < fv.size(); ++v)
        mask.above[static_cast<std::size_t>(v)] = strict ? (fv[v] > u) : (fv[v] >= u);
    return mask;
}

} // namespace

ExcursionMask excursion_mask(const Eigen::MatrixXd& values, const FunctionSpec& f, double u)
{
    return mask_from_values(field_values(values, f), u, false);
}

ExcursionMask excursion_mask_strict(const Eigen::MatrixXd& values, const FunctionSpec& f,
                                    double u)
{
    return mask_from_values(field_values(values, f), u, true);
}

long euler_characteristic(const SphereGrid& grid, const ExcursionMask& mask)
{
    if (static_cast<long>(mask.above.size()) != grid.vertex_count())
        throw std::invalid_argument("euler_characteristic: mask size mismatch");
    const auto& above = mask.above;

    long v_in = 0, e_in = 0, f_in = 0;
    for (std::uint8_t a : above)
        v_in += a;
    for (long e = 0; e < grid.edges.rows(); ++e)
        e_in += above[grid.edges(e, 0)] & above[grid.edges(e, 1)];
    for (long t = 0; t < grid.triangles.rows(); ++t)
        f_in += above[grid.triangles(t, 0)] & above[grid.triangles(t, 1)] &
                above[grid.triangles(t, 2)];
    return v_in - e_in + f_in;
}

long euler_characteristic(const CircleGrid& grid, const ExcursionMask& mask)
{
    if (static_cast<long>(mask.above.size()) != static_cast<long>(grid.n))
        throw std::invalid_argument("euler_characteristic: mask size mismatch");
    const auto& above = mask.above;

    long v_in = 0, e_in = 0;
    for (int i = 0; i < grid.n; ++i) {
        v_in += above[i];
        e_in += above[i] & above[(i + 1) % grid.n];
    }
    return v_in - e_in;
}

namespace {

struct ChiTable {
    Eigen::MatrixXd chi; // n_sims x n_levels, integer-valued
};

McEcResult summarize(const ChiTable& table, const std::vector<double>& levels)
{
    const long n = table.chi.rows();
    McEcResult out;
    out.levels = levels;
    out.n_sims = static_cast<int>(n);
    out.mean = table.chi.colwise().mean();
    out.std_error.resize(table.chi.cols());
    for (long c = 0; c < table.chi.cols(); ++c) {
        const double m = out.mean[c];
        const double ss = (table.chi.col(c).array() - m).square().sum();
        const double sd = std::sqrt(ss / std::max<long>(n - 1, 1));
        out.std_error[c] = sd / std::sqrt(static_cast<double>(n));
    }
    return out;
}

} // namespace

McEcResult mc_expected_ec(const SphereGrid& grid,
                          const std::vector<PowerSpectrum>& spectra,
                          const FunctionSpec& f, const std::vector<double>& levels,
                          int n_sims, std::uint64_t seed, int lmax, int n_threads)
{
    if (n_sims < 100)
        throw std::invalid_argument("mc_expected_ec: need at least 100 simulations");
    if (levels.empty())
        throw std::invalid_argument("mc_expected_ec: need at least one level");
    if (static_cast<int>(spectra.size()) != f.ambient_dim())
        throw std::invalid_argument("mc_expected_ec: spectra count must match K");

    SphereSynthesizer synth(grid, lmax);

    ChiTable table;
    table.chi.resize(n_sims, static_cast<long>(levels.size()));

    if (n_threads <= 0)
        n_threads = std::max(1u, std::thread::hardware_concurrency());
    n_threads = std::min(n_threads, n_sims);

    std::atomic<int> next_sim{0};
    std::exception_ptr worker_error;
    std::mutex error_mutex;

    auto worker = [&]() {
        try {
            for (;;) {
                const int s = next_sim.fetch_add(1);
                if (s >= n_sims)
                    break;
                const Eigen::MatrixXd values =
                    synth.sample(spectra, derive_seed(seed, static_cast<std::uint64_t>(s)));
                const Eigen::VectorXd fv = field_values(values, f);
                for (std::size_t li = 0; li < levels.size(); ++li) {
                    const ExcursionMask mask = mask_from_values(fv, levels[li], false);
                    table.chi(s, static_cast<long>(li)) =
                        static_cast<double>(euler_characteristic(grid, mask));
                }
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

    return summarize(table, levels);
}

McEcResult mc_expected_ec(const CircleGrid& grid,
                          const std::vector<FourierSpectrum>& spectra,
                          const FunctionSpec& f, const std::vector<double>& levels,
                          int n_sims, std::uint64_t seed, int n_threads)
{
    if (n_sims < 100)
        throw std::invalid_argument("mc_expected_ec: need at least 100 simulations");
    if (static_cast<int>(spectra.size()) != f.ambient_dim())
        throw std::invalid_argument("mc_expected_ec: spectra count must match K");

    ChiTable table;
    table.chi.resize(n_sims, static_cast<long>(levels.size()));

    if (n_threads <= 0)
        n_threads = std::max(1u, std::thread::hardware_concurrency());
    n_threads = std::min(n_threads, n_sims);

    std::atomic<int> next_sim{0};
    std::exception_ptr worker_error;
    std::mutex error_mutex;

    auto worker = [&]() {
        try {
            for (;;) {
                const int s = next_sim.fetch_add(1);
                if (s >= n_sims)
                    break;
                const Eigen::MatrixXd values =
                    synthesize_circle(spectra, grid, derive_seed(seed, static_cast<std::uint64_t>(s)));
                const Eigen::VectorXd fv = field_values(values, f);
                for (std::size_t li = 0; li < levels.size(); ++li) {
                    const ExcursionMask mask = mask_from_values(fv, levels[li], false);
                    table.chi(s, static_cast<long>(li)) =
                        static_cast<double>(euler_characteristic(grid, mask));
                }
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

    return summarize(table, levels);
}

} // namespace gkf
