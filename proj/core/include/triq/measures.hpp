#pragma once

#include <array>
#include <cstdint>
#include <Eigen/Dense>

#include "triq/correlations.hpp"
#include "triq/qstate.hpp"

// Quantum-correlation measures on two-qubit states, and the 3-tangle on
// pure three-qubit states.

namespace triq {

/// Measurement axes for a CHSH experiment; each must be a unit 3-vector.
struct Directions {
  Eigen::Vector3d a1, a2, b1, b2;

  /// Throws std::invalid_argument if any vector is not unit length (1e-10).
  void validate() const;
};

/// Wootters concurrence, in [0,1].
double concurrence(const DensityMatrix& rho4);

/// 3-tangle of a pure three-qubit state, in [0,1].
double three_tangle(const PureState3& psi);

/// The three hub-permutation evaluations of the 3-tangle
/// (1 - a^2 - C^2(AB) - C^2(AC) and its two permutations), unclamped.
std::array<double, 3> three_tangle_permutations(const PureState3& psi);

/// Horodecki parameter M = s1 + s2, in [0,2]. M > 1 iff the state can
/// violate a CHSH inequality; the maximal CHSH value is 2 sqrt(M).
double horodecki_M(const DensityMatrix& rho4);

/// M > 1 witness: CHSH violation possible, and EPR-steerable via two spin
/// measurements per party.
bool chsh_violating(const DensityMatrix& rho4);

/// <B> = a1.T b1 + a1.T b2 + a2.T b1 - a2.T b2 for the correlation part of
/// the Bell operator. Throws on non-unit directions.
double chsh_expectation(const DensityMatrix& rho4, const Directions& d);

struct ChshResult {
  double value = 0;  // max |<B>| over measurement directions
  Directions dirs;   // achieving directions
};

/// Maximizes |<B>| over the four direction vectors by alternating
/// closed-form updates from random restarts; falls back to the analytic
/// construction from the top-two eigenvectors of T^t T when the iteration
/// stalls. The result matches 2 sqrt(s1+s2) within 1e-8.
ChshResult chsh_optimize(const DensityMatrix& rho4, std::uint64_t seed = 0,
                         int restarts = 20);

/// Geometric discord D_{A->B} = (a^2 + tr[T T^t] - k_max)/4 with
/// k_max the largest eigenvalue of a a^t + T T^t. In [0, 1/2].
double geometric_discord(const DensityMatrix& rho4);

/// Remote-state-preparation fidelity F = (s2 + s3)/2, in [0,1].
double rsp_fidelity(const DensityMatrix& rho4);

}  // namespace triq
