#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "triq/correlations.hpp"
#include "triq/measures.hpp"
#include "triq/qstate.hpp"

// Verifiers and analytic oracles for the invariance, ordering, monogamy,
// tradeoff and marginal-consistency relations of three-qubit spin
// correlations.

namespace triq {

struct RelationReport {
  std::string name;
  double lhs = 0, rhs = 0;
  double residual = 0;  // lhs - rhs, or max |difference| for equality chains
  bool satisfied = false;
  std::string state_label;
};

// Tolerance budget: equality relations sit three chained eigensolves deep.
inline constexpr double kEqualityTol = 1e-9;
inline constexpr double kInequalitySlack = 1e-9;

/// Pairwise anisotropy deltas identical across AB/AC/BC. Exact for pure
/// states; generally fails for mixed ones (reported, not asserted).
RelationReport check_aniso_invariance(const PureState3& psi,
                                      const std::string& label = "");
RelationReport check_aniso_invariance(const DensityMatrix& rho8,
                                      const std::string& label = "");

/// s_iso^AB + s_iso^AC + s_iso^BC = 1 for pure states.
RelationReport check_iso_sum(const PureState3& psi, const std::string& label = "");

/// Sum of pairwise isotropic strengths (<= 1 for mixed three-qubit states).
double iso_sum(const DensityMatrix& rho8);

/// Five-way chain b^2-c^2 = s_iso^AC - s_iso^AB = C^2(AC)-C^2(AB)
/// = F^AC-F^AB = (M^AC-M^AB)/2 and permutations, plus the common ordering
/// of the triples (C^2), (M), (F), (s_iso), (c,b,a). Values within 1e-9
/// are treated as tied.
RelationReport ordering_chain(const PureState3& psi, const std::string& label = "");

struct MonogamyOptions {
  int random_direction_draws = 0;  // extra random CHSH direction probes
  std::uint64_t seed = 0;
};

/// All-permutation monogamy and tradeoff reports:
/// M^XY + M^XZ <= 2 (equality with 2(1 - s3^YZ) for pure inputs),
/// <B_XY>^2 + <B_XZ>^2 <= 8 at optimized plus random directions,
/// D + D <= 1/2, F + F <= 1, and for pure inputs max M + tau <= 2 and
/// max M + g1 + g2 <= 2.
std::vector<RelationReport> monogamy_report(const PureState3& psi,
                                            const MonogamyOptions& opts = {},
                                            const std::string& label = "");
std::vector<RelationReport> monogamy_report(const DensityMatrix& rho8,
                                            const MonogamyOptions& opts = {},
                                            const std::string& label = "");

/// Numeric spectra and anisotropic volume of a W-class state (l4 = 0,
/// l0 > 0) against their closed forms, for all three pairs; the explicit
/// anisotropic-strength closed form is compared as well.
/// Throws if l4 != 0 or l0 == 0.
RelationReport wclass_oracle(const CanonicalParams& params);

/// Single-qubit marginal problem: Bloch lengths satisfy a + b <= 1 + c and
/// permutations (necessary and sufficient for pure three-qubit joinability).
RelationReport marginal_consistency(const std::array<DensityMatrix, 3>& singles);

/// Two-qubit marginal necessary conditions: identical anisotropy deltas and
/// isotropic strengths summing to 1. Necessary only; the report name
/// carries the "_necessary" marker.
RelationReport marginal_consistency_pairs(const std::array<DensityMatrix, 3>& pairs);

/// M^AB = 1 + s3^AB - s3^AC - s3^BC identity on pure states.
RelationReport check_horodecki_identity(const PureState3& psi,
                                        const std::string& label = "");

// Closed-form oracles from the canonical five-parameter form. These take
// the analytic route and never touch the density-matrix pipeline, so tests
// can cross-check the two paths.
namespace analytic {

Eigen::Vector3d bloch(const CanonicalParams& p, Party party);
Eigen::Matrix3d corr_matrix(const CanonicalParams& p, Pair pair);
double s_iso(const CanonicalParams& p, Pair pair);
double s_ani_squared(const CanonicalParams& p);
double three_tangle(const CanonicalParams& p);  // 4 l0^2 l4^2
double concurrence_squared(const CanonicalParams& p, Pair pair);

/// W-class (l4 = 0) spectrum of S for the given pair, sorted descending.
std::array<double, 3> wclass_spectrum(const CanonicalParams& p, Pair pair);

/// W-class anisotropic volume closed form.
double wclass_v_ani(const CanonicalParams& p);

}  // namespace analytic

}  // namespace triq
