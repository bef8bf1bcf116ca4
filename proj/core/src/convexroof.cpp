#include "triq/convexroof.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "triq/measures.hpp"

namespace triq {

namespace {

constexpr double kRankTol = 1e-10;

struct EigenDecomp {
  Eigen::MatrixXcd vectors;  // columns, one per retained eigenvalue
  Eigen::VectorXd values;
  int rank = 0;
};

EigenDecomp decompose_state(const DensityMatrix& rho8) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho8.matrix());
  EigenDecomp d;
  std::vector<int> kept;
  for (int i = 0; i < es.eigenvalues().size(); ++i)
    if (es.eigenvalues()(i) > kRankTol) kept.push_back(i);
  d.rank = static_cast<int>(kept.size());
  d.vectors.resize(rho8.dim(), d.rank);
  d.values.resize(d.rank);
  for (int i = 0; i < d.rank; ++i) {
    d.vectors.col(i) = es.eigenvectors().col(kept[static_cast<size_t>(i)]);
    d.values(i) = es.eigenvalues()(kept[static_cast<size_t>(i)]);
  }
  return d;
}

Ensemble ensemble_from_decomp(const EigenDecomp& d, const Eigen::MatrixXcd& v) {
  Ensemble e;
  const int m = static_cast<int>(v.rows());
  for (int n = 0; n < m; ++n) {
    Eigen::VectorXcd unnorm = Eigen::VectorXcd::Zero(d.vectors.rows());
    for (int i = 0; i < d.rank; ++i)
      unnorm += v(n, i) * std::sqrt(d.values(i)) * d.vectors.col(i);
    const double p = unnorm.squaredNorm();
    if (p < 1e-14) continue;  // unused ensemble slot
    Vec8 amp = unnorm / std::sqrt(p);
    e.members.emplace_back(p, PureState3(amp));
  }
  // Renormalize away eigenvalue roundoff in the weights.
  double total = 0;
  for (auto& [w, s] : e.members) total += w;
  for (auto& [w, s] : e.members) w /= total;
  return e;
}

Eigen::MatrixXcd gaussian_matrix(int rows, int cols, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::MatrixXcd g(rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) g(r, c) = cplx(gauss(rng), gauss(rng));
  return g;
}

Eigen::MatrixXcd orthonormalize(const Eigen::MatrixXcd& m) {
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(m);
  return Eigen::MatrixXcd(qr.householderQ()) *
         Eigen::MatrixXcd::Identity(m.rows(), m.cols());
}

}  // namespace

double Ensemble::reconstruction_residual(const DensityMatrix& rho8) const {
  Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(rho8.dim(), rho8.dim());
  for (const auto& [w, psi] : members)
    sum += w * (psi.amplitudes() * psi.amplitudes().adjoint());
  return (sum - rho8.matrix()).norm();
}

Eigen::MatrixXcd random_isometry(int m, int r, std::uint64_t seed) {
  if (m < r) throw std::invalid_argument("isometry needs m >= r");
  std::mt19937_64 rng(seed);
  return orthonormalize(gaussian_matrix(m, r, rng));
}

int state_rank(const DensityMatrix& rho8) {
  return decompose_state(rho8).rank;
}

Ensemble ensemble_from_isometry(const DensityMatrix& rho8,
                                const Eigen::MatrixXcd& v) {
  const EigenDecomp d = decompose_state(rho8);
  if (v.rows() < d.rank || v.cols() != d.rank)
    throw std::invalid_argument(
        "isometry must be m x rank(rho) with m >= rank(rho)");
  if ((v.adjoint() * v - Eigen::MatrixXcd::Identity(d.rank, d.rank))
          .cwiseAbs()
          .maxCoeff() > 1e-10)
    throw std::invalid_argument("mixing matrix is not an isometry");
  return ensemble_from_decomp(d, v);
}

double convex_roof_estimate(const DensityMatrix& rho8, const AnisoFunctional& q,
                            const RoofBudget& budget, std::uint64_t seed,
                            Pair pair) {
  if (rho8.dim() != 8)
    throw std::invalid_argument("convex roof requires a three-qubit state");
  const EigenDecomp d = decompose_state(rho8);
  const int m = std::min(8, d.rank + 2);

  auto evaluate = [&](const Eigen::MatrixXcd& v) {
    const Ensemble e = ensemble_from_decomp(d, v);
    double avg = 0;
    for (const auto& [w, psi] : e.members) avg += w * q(pair_profile(psi, pair));
    return avg;
  };

  // Eigen-ensemble baseline (identity isometry); the pure case collapses
  // here exactly.
  Eigen::MatrixXcd ident = Eigen::MatrixXcd::Zero(m, d.rank);
  ident.topLeftCorner(d.rank, d.rank).setIdentity();
  double best = evaluate(ident);
  if (d.rank == 1) return best;

  for (int r = 0; r < budget.restarts; ++r) {
    std::mt19937_64 rng(detail::mix_seed(seed, static_cast<std::uint64_t>(r)));
    Eigen::MatrixXcd v = orthonormalize(gaussian_matrix(m, d.rank, rng));
    double val = evaluate(v);
    double step = 0.5;
    for (int it = 0; it < budget.iterations; ++it) {
      const Eigen::MatrixXcd cand =
          orthonormalize(v + step * gaussian_matrix(m, d.rank, rng));
      const double cval = evaluate(cand);
      if (cval < val) {
        val = cval;
        v = cand;
      } else {
        step = std::max(1e-3, step * 0.9);
      }
    }
    best = std::min(best, val);
  }
  return best;
}

RelationReport mixed_tradeoff_check(const DensityMatrix& rho8,
                                    const RoofBudget& budget,
                                    std::uint64_t seed,
                                    const std::string& label) {
  double max_m = 0;
  for (Pair pr : kAllPairs)
    max_m = std::max(max_m, horodecki_M(partial_trace(rho8, pr)));
  const double g1 = convex_roof_estimate(
      rho8, [](const AnisotropyProfile& p) { return p.g1; }, budget, seed);
  const double g2 = convex_roof_estimate(
      rho8, [](const AnisotropyProfile& p) { return p.g2; }, budget,
      detail::mix_seed(seed, 0x67617032));
  RelationReport r;
  r.name = "mixed_tradeoff_gaps_upper_bound";
  r.lhs = max_m + g1 + g2;
  r.rhs = 2.0;
  r.residual = r.lhs - r.rhs;
  r.satisfied = r.residual <= kInequalitySlack;
  r.state_label = label;
  return r;
}

}  // namespace triq
