#include "gkf/field_sim.hpp"

#include "gkf/rng.hpp"
#include "gkf/spherical_harmonics.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

namespace gkf {

double PowerSpectrum::variance() const
{
    double v = 0.0;
    for (int l = 0; l <= lmax(); ++l)
        v += (2.0 * l + 1.0) * c_ell[l];
    return v / (4.0 * M_PI);
}

PowerSpectrum PowerSpectrum::normalized() const
{
    const double v = variance();
    if (!(v > 0.0))
        throw std::invalid_argument("PowerSpectrum: cannot normalize a zero spectrum");
    return {c_ell / v};
}

bool PowerSpectrum::is_normalized(double tol) const
{
    return std::abs(variance() - 1.0) <= tol;
}

PowerSpectrum PowerSpectrum::read_csv(std::istream& in)
{
    std::string line;
    if (!std::getline(in, line))
        throw std::runtime_error("PowerSpectrum: empty spectrum file");
    // tolerate trailing carriage returns from foreign line endings
    while (!line.empty() && (line.back() == '\r' || line.back() == ' '))
        line.pop_back();
    if (line != "ell,c_ell")
        throw std::runtime_error("PowerSpectrum: expected header 'ell,c_ell', got '" + line + "'");

    std::vector<double> values;
    int expected_ell = 0;
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        std::istringstream row(line);
        int ell;
        char comma;
        double value;
        if (!(row >> ell >> comma >> value) || comma != ',')
            throw std::runtime_error("PowerSpectrum: malformed row '" + line + "'");
        if (ell != expected_ell)
            throw std::runtime_error("PowerSpectrum: rows must list consecutive ell from 0");
        if (value < 0.0)
            throw std::runtime_error("PowerSpectrum: C_ell must be nonnegative");
        values.push_back(value);
        ++expected_ell;
    }
    if (values.empty())
        throw std::runtime_error("PowerSpectrum: no rows");
    PowerSpectrum s;
    s.c_ell = Eigen::Map<Eigen::VectorXd>(values.data(), static_cast<long>(values.size()));
    return s;
}

PowerSpectrum PowerSpectrum::read_csv_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("PowerSpectrum: cannot open " + path);
    return read_csv(in);
}

void PowerSpectrum::write_csv(std::ostream& out) const
{
    out << "ell,c_ell\n";
    char buf[64];
    for (int l = 0; l <= lmax(); ++l) {
        std::snprintf(buf, sizeof buf, "%d,%.17g\n", l, c_ell[l]);
        out << buf;
    }
}

double spectral_moment(const PowerSpectrum& spectrum)
{
    double lambda = 0.0;
    for (int l = 0; l <= spectrum.lmax(); ++l)
        lambda += (2.0 * l + 1.0) * spectrum.c_ell[l] * l * (l + 1.0);
    return lambda / (8.0 * M_PI);
}

SphereSynthesizer::SphereSynthesizer(const SphereGrid& grid, int lmax, int n_threads)
    : lmax_(lmax)
{
    if (lmax < 2)
        throw std::invalid_argument("SphereSynthesizer: lmax must be >= 2");
    const double nyquist = grid.vertices_per_great_circle() / 4.0;
    if (lmax > nyquist)
        std::cerr << "warning: lmax " << lmax << " exceeds mesh Nyquist bound "
                  << nyquist << " at subdivision level " << grid.subdivision_level
                  << "; excursion counts may be biased\n";
    basis_ = real_sh_basis(lmax, grid.vertices, n_threads);
}

Eigen::VectorXd SphereSynthesizer::draw_coefficients(const PowerSpectrum& spectrum,
                                                     std::uint64_t stream_seed) const
{
    if (spectrum.lmax() < lmax_)
        throw std::invalid_argument("SphereSynthesizer: spectrum shorter than lmax");
    RandomStream stream(stream_seed);
    Eigen::VectorXd coeff(sh_count(lmax_));
    for (int l = 0; l <= lmax_; ++l) {
        const double sd = std::sqrt(spectrum.c_ell[l]);
        for (int m = -l; m <= l; ++m)
            coeff[sh_index(l, m)] = sd * stream.next_gaussian();
    }
    return coeff;
}

Eigen::MatrixXd SphereSynthesizer::sample(const std::vector<PowerSpectrum>& spectra,
                                          std::uint64_t seed) const
{
    if (spectra.empty())
        throw std::invalid_argument("SphereSynthesizer: need at least one spectrum");
    Eigen::MatrixXd values(basis_.rows(), static_cast<long>(spectra.size()));
    for (std::size_t k = 0; k < spectra.size(); ++k) {
        if (!spectra[k].is_normalized())
            throw std::invalid_argument("SphereSynthesizer: spectrum not normalized");
        const Eigen::VectorXd coeff =
            draw_coefficients(spectra[k], derive_seed(seed, static_cast<std::uint64_t>(k)));
        values.col(static_cast<long>(k)).noalias() = basis_ * coeff;
    }
    return values;
}

FieldSample synthesize_sphere(const std::vector<PowerSpectrum>& spectra,
                              const SphereGrid& grid, std::uint64_t seed)
{
    int lmax = 0;
    for (const auto& s : spectra)
        lmax = std::max(lmax, s.lmax());
    SphereSynthesizer synth(grid, lmax);
    FieldSample sample;
    sample.values = synth.sample(spectra, seed);
    sample.seed = seed;
    sample.spectra = spectra;
    return sample;
}

GradientCovarianceResult gradient_covariance_check(const SphereGrid& grid,
                                                   const std::vector<PowerSpectrum>& spectra,
                                                   int n_replications,
                                                   std::uint64_t seed)
{
    if (n_replications < 100)
        throw std::invalid_argument("gradient_covariance_check: need at least 100 replications");
    const int k_comp = static_cast<int>(spectra.size());
    const long nv = grid.vertex_count();

    // Per-vertex tangent frame and least-squares gradient operator over the
    // one-ring, precomputed once.
    const auto neighbors = grid.vertex_neighbors();
    std::vector<Eigen::MatrixXd> ls_op(nv); // 2 x deg
    for (long i = 0; i < nv; ++i) {
        const Eigen::Vector3d n = grid.vertices.row(i);
        const Eigen::Vector3d ref =
            (std::abs(n.z()) < 0.9) ? Eigen::Vector3d::UnitZ() : Eigen::Vector3d::UnitX();
        const Eigen::Vector3d e1 = (ref - ref.dot(n) * n).normalized();
        const Eigen::Vector3d e2 = n.cross(e1);

        const auto& nbr = neighbors[i];
        Eigen::MatrixXd jac(static_cast<long>(nbr.size()), 2);
        for (std::size_t a = 0; a < nbr.size(); ++a) {
            const Eigen::Vector3d delta =
                grid.vertices.row(nbr[a]) - grid.vertices.row(i);
            jac(static_cast<long>(a), 0) = delta.dot(e1);
            jac(static_cast<long>(a), 1) = delta.dot(e2);
        }
        ls_op[i] = (jac.transpose() * jac).ldlt().solve(jac.transpose());
    }

    int lmax = 0;
    for (const auto& s : spectra)
        lmax = std::max(lmax, s.lmax());
    SphereSynthesizer synth(grid, lmax);

    const int dim = 2 * k_comp;
    Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(dim, dim);
    Eigen::MatrixXd sum_sq = Eigen::MatrixXd::Zero(dim, dim);

    Eigen::MatrixXd grads(nv, dim);
    Eigen::VectorXd diffs;
    for (int r = 0; r < n_replications; ++r) {
        const Eigen::MatrixXd values =
            synth.sample(spectra, derive_seed(seed, static_cast<std::uint64_t>(r)));
        for (long i = 0; i < nv; ++i) {
            const auto& nbr = neighbors[i];
            diffs.resize(static_cast<long>(nbr.size()));
            for (int k = 0; k < k_comp; ++k) {
                for (std::size_t a = 0; a < nbr.size(); ++a)
                    diffs[static_cast<long>(a)] = values(nbr[a], k) - values(i, k);
                const Eigen::Vector2d g = ls_op[i] * diffs;
                grads(i, 2 * k) = g[0];
                grads(i, 2 * k + 1) = g[1];
            }
        }
        const Eigen::MatrixXd s_r = grads.transpose() * grads / static_cast<double>(nv);
        sum += s_r;
        sum_sq += s_r.cwiseProduct(s_r);
    }

    GradientCovarianceResult out;
    out.n_replications = n_replications;
    out.covariance = sum / n_replications;
    const Eigen::MatrixXd var =
        (sum_sq - sum.cwiseProduct(sum) / n_replications) / (n_replications - 1.0);
    out.std_error = (var / n_replications).cwiseMax(0.0).cwiseSqrt();
    return out;
}

FourierSpectrum FourierSpectrum::normalized() const
{
    const double v = variance();
    if (!(v > 0.0))
        throw std::invalid_argument("FourierSpectrum: cannot normalize a zero spectrum");
    return {sigma2 / v, circumference};
}

bool FourierSpectrum::is_normalized(double tol) const
{
    return std::abs(variance() - 1.0) <= tol;
}

double spectral_moment(const FourierSpectrum& spectrum)
{
    if (!(spectrum.circumference > 0.0))
        throw std::invalid_argument("FourierSpectrum: circumference must be positive");
    double lambda = 0.0;
    for (int k = 0; k < spectrum.sigma2.size(); ++k) {
        const double omega = 2.0 * M_PI * k / spectrum.circumference;
        lambda += spectrum.sigma2[k] * omega * omega;
    }
    return lambda;
}

Eigen::MatrixXd synthesize_circle(const std::vector<FourierSpectrum>& spectra,
                                  const CircleGrid& grid, std::uint64_t seed)
{
    if (spectra.empty())
        throw std::invalid_argument("synthesize_circle: need at least one spectrum");
    Eigen::MatrixXd values(grid.n, static_cast<long>(spectra.size()));
    for (std::size_t k = 0; k < spectra.size(); ++k) {
        const auto& sp = spectra[k];
        if (!sp.is_normalized())
            throw std::invalid_argument("synthesize_circle: spectrum not normalized");
        if (std::abs(sp.circumference - grid.circumference) > 1e-12)
            throw std::invalid_argument("synthesize_circle: circumference mismatch");
        RandomStream stream(derive_seed(seed, static_cast<std::uint64_t>(k)));

        const int n_harm = static_cast<int>(sp.sigma2.size());
        Eigen::VectorXd a(n_harm), b(n_harm);
        for (int h = 0; h < n_harm; ++h) {
            a[h] = stream.next_gaussian();
            b[h] = (h == 0) ? 0.0 : stream.next_gaussian();
        }
        for (int i = 0; i < grid.n; ++i) {
            const double t = grid.arclength(i);
            double y = std::sqrt(sp.sigma2[0]) * a[0];
            for (int h = 1; h < n_harm; ++h) {
                const double omega = 2.0 * M_PI * h / sp.circumference;
                y += std::sqrt(sp.sigma2[h]) *
                     (a[h] * std::cos(omega * t) + b[h] * std::sin(omega * t));
            }
            values(i, static_cast<long>(k)) = y;
        }
    }
    return values;
}

} // namespace gkf
