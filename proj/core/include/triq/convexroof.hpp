#pragma once

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "triq/correlations.hpp"
#include "triq/relations.hpp"

// Convex-roof extension estimator for anisotropy functionals of mixed
// three-qubit states. The estimator minimizes the ensemble average of a
// pure-state functional over pure-state decompositions; its result is an
// upper bound on the true roof value.

namespace triq {

/// Weighted pure-state decomposition of a three-qubit density matrix.
struct Ensemble {
  std::vector<std::pair<double, PureState3>> members;

  /// Frobenius distance between sum p_n |psi_n><psi_n| and rho.
  double reconstruction_residual(const DensityMatrix& rho8) const;
};

/// Decomposition of size m generated from the eigen-ensemble of rho mixed
/// by an m x r isometry V (V^dag V = 1, r = rank of rho). Every size-m
/// decomposition is reachable by some V. Throws if m < rank.
Ensemble ensemble_from_isometry(const DensityMatrix& rho8,
                                const Eigen::MatrixXcd& v);

/// Haar-random m x r isometry (QR of a complex Gaussian matrix).
Eigen::MatrixXcd random_isometry(int m, int r, std::uint64_t seed);

/// Numerical rank of rho at threshold 1e-10.
int state_rank(const DensityMatrix& rho8);

struct RoofBudget {
  int restarts = 20;
  int iterations = 100;
};

/// Functional of the anisotropy profile of one reduced pair; pure-state
/// anisotropic invariance makes the value pair-independent.
using AnisoFunctional = std::function<double(const AnisotropyProfile&)>;

/// Stochastic upper bound on the convex-roof extension of Q: the minimum
/// ensemble average over random-isometry restarts with local refinement.
/// Deterministic given the seed; monotone non-increasing in either budget
/// dimension when the seed is shared. Ensemble size is capped at
/// rank(rho) + 2.
double convex_roof_estimate(const DensityMatrix& rho8, const AnisoFunctional& q,
                            const RoofBudget& budget, std::uint64_t seed,
                            Pair pair = Pair::AB);

/// Mixed-state tradeoff max{M} + roof(g1) + roof(g2) <= 2, with the roofs
/// replaced by their upper estimates (a satisfied report is one-sided
/// evidence; the name carries the "_upper_bound" marker).
RelationReport mixed_tradeoff_check(const DensityMatrix& rho8,
                                    const RoofBudget& budget,
                                    std::uint64_t seed,
                                    const std::string& label = "");

}  // namespace triq
