#pragma once

#include <Eigen/Dense>

namespace gkf {

/// Flattened index of the real harmonic (l, m), m in [-l, l].
inline int sh_index(int l, int m)
{
    return l * l + l + m;
}

inline int sh_count(int lmax)
{
    return (lmax + 1) * (lmax + 1);
}

/// Real orthonormal spherical harmonics (unit L2 norm over the sphere) at
/// the unit direction n, all degrees 0..lmax, written into out[sh_index].
/// Convention: zeta_{l,0} = Pbar_{l,0}, zeta_{l,+-m} = sqrt(2) Pbar_{l,m}
/// {cos, sin}(m phi), with Pbar fully normalized so that
/// sum_m zeta_{lm}^2 = (2l+1)/(4 pi).
void real_sh_row(int lmax, const Eigen::Vector3d& n, double* out);

/// Basis matrix: one row per vertex, sh_count(lmax) columns.
Eigen::MatrixXd real_sh_basis(int lmax,
                              const Eigen::Matrix<double, Eigen::Dynamic, 3>& vertices,
                              int n_threads = 0);

} // namespace gkf
