#pragma once

#include <array>
#include <Eigen/Dense>

#include "triq/qstate.hpp"

// Bloch vectors and spin correlation matrices of two-qubit states, and the
// isotropic/anisotropic decomposition of the eigenvalues of S = T T^t.

namespace triq {

/// Ordered eigenvalues s1 >= s2 >= s3 >= 0 of S = T T^t.
struct SpinSpectrum {
  double s1 = 0, s2 = 0, s3 = 0;
};

/// Isotropic strength, eigenvalue deviations, gaps, anisotropic strength
/// and signed anisotropic volume of a spin spectrum.
struct AnisotropyProfile {
  double s_iso = 0;
  std::array<double, 3> deltas{};  // ds_j = s_j - s_iso, sum to zero
  double g1 = 0, g2 = 0;           // s1 - s2, s2 - s3
  double s_ani = 0;                // sqrt(sum ds_j^2)
  double v_ani = 0;                // ds1 * ds2 * ds3 (signed)
};

/// Bloch vectors (a, b) of the two reduced qubits: a_j = tr[rho (s_j x 1)],
/// b_j = tr[rho (1 x s_j)]. Throws on wrong dimension.
std::pair<Eigen::Vector3d, Eigen::Vector3d> bloch_vectors(const DensityMatrix& rho4);

/// Bloch vector of a single-qubit state.
Eigen::Vector3d bloch_vector(const DensityMatrix& rho2);

/// Spin correlation matrix T_jk = tr[rho (s_j x s_k)]. Throws on wrong dimension.
Eigen::Matrix3d corr_matrix(const DensityMatrix& rho4);

/// Descending eigenvalues of T T^t. Negative-zero roundoff is clamped at 1e-12.
SpinSpectrum spectrum(const Eigen::Matrix3d& t);

AnisotropyProfile decompose(const SpinSpectrum& spec);

/// Convenience: profile of one reduced pair of a three-qubit state.
AnisotropyProfile pair_profile(const PureState3& psi, Pair pair);
AnisotropyProfile pair_profile(const DensityMatrix& rho8, Pair pair);

namespace detail {
/// Eigenvalues of a symmetric 3x3 matrix via cyclic Jacobi rotations,
/// unsorted. Chosen over closed-form trigonometric roots for robustness
/// on near-degenerate spectra.
std::array<double, 3> jacobi_eigenvalues(const Eigen::Matrix3d& sym);
}  // namespace detail

}  // namespace triq
