#include "triq/measures.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace triq {

namespace {

constexpr double kUnitTol = 1e-10;

Eigen::Vector3d normalized_or(const Eigen::Vector3d& v, const Eigen::Vector3d& fallback) {
  const double n = v.norm();
  return n > 1e-14 ? Eigen::Vector3d(v / n) : fallback;
}

Eigen::Vector3d random_unit(std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::Vector3d v;
  do {
    v << gauss(rng), gauss(rng), gauss(rng);
  } while (v.norm() < 1e-8);
  return v.normalized();
}

double chsh_value(const Eigen::Matrix3d& t, const Directions& d) {
  return d.a1.dot(t * (d.b1 + d.b2)) + d.a2.dot(t * (d.b1 - d.b2));
}

}  // namespace

void Directions::validate() const {
  for (const auto* v : {&a1, &a2, &b1, &b2})
    if (std::abs(v->norm() - 1.0) > kUnitTol)
      throw std::invalid_argument("measurement direction is not a unit vector");
}

double concurrence(const DensityMatrix& rho4) {
  if (rho4.dim() != 4)
    throw std::invalid_argument("concurrence requires a two-qubit state");
  Eigen::Matrix4cd yy = Eigen::Matrix4cd::Zero();
  // sigma_y (x) sigma_y = antidiag(-1, 1, 1, -1)
  yy(0, 3) = -1;
  yy(1, 2) = 1;
  yy(2, 1) = 1;
  yy(3, 0) = -1;
  // The square-root eigenvalues of rho (yy) rho* (yy) are the singular
  // values of sqrt(rho) (yy) sqrt(rho)*; the SVD route keeps the
  // near-zero roots at machine precision where the direct eigensolve of
  // the non-Hermitian product loses half the digits.
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(rho4.matrix());
  Eigen::Matrix4cd sqrt_rho = Eigen::Matrix4cd::Zero();
  for (int i = 0; i < 4; ++i)
    sqrt_rho += std::sqrt(std::max(0.0, es.eigenvalues()(i))) *
                es.eigenvectors().col(i) * es.eigenvectors().col(i).adjoint();
  const Eigen::Matrix4cd m = sqrt_rho * yy * sqrt_rho.conjugate();
  Eigen::JacobiSVD<Eigen::Matrix4cd> svd(m);
  const auto& lam = svd.singularValues();
  return std::max(0.0, lam(0) - lam(1) - lam(2) - lam(3));
}

std::array<double, 3> three_tangle_permutations(const PureState3& psi) {
  const double a2 = bloch_vector(partial_trace(psi, Party::A)).squaredNorm();
  const double b2 = bloch_vector(partial_trace(psi, Party::B)).squaredNorm();
  const double c2 = bloch_vector(partial_trace(psi, Party::C)).squaredNorm();
  const double cab = concurrence(partial_trace(psi, Pair::AB));
  const double cac = concurrence(partial_trace(psi, Pair::AC));
  const double cbc = concurrence(partial_trace(psi, Pair::BC));
  return {1.0 - a2 - cab * cab - cac * cac,
          1.0 - b2 - cab * cab - cbc * cbc,
          1.0 - c2 - cac * cac - cbc * cbc};
}

double three_tangle(const PureState3& psi) {
  const auto perms = three_tangle_permutations(psi);
  const double tau = (perms[0] + perms[1] + perms[2]) / 3.0;
  return std::clamp(tau, 0.0, 1.0);
}

double horodecki_M(const DensityMatrix& rho4) {
  const SpinSpectrum s = spectrum(corr_matrix(rho4));
  return s.s1 + s.s2;
}

bool chsh_violating(const DensityMatrix& rho4) { return horodecki_M(rho4) > 1.0; }

double chsh_expectation(const DensityMatrix& rho4, const Directions& d) {
  d.validate();
  return chsh_value(corr_matrix(rho4), d);
}

ChshResult chsh_optimize(const DensityMatrix& rho4, std::uint64_t seed,
                         int restarts) {
  const Eigen::Matrix3d t = corr_matrix(rho4);
  const Eigen::Matrix3d tt = t.transpose() * t;

  auto refine = [&](Directions d) {
    double prev = -1e300;
    for (int it = 0; it < 500; ++it) {
      d.a1 = normalized_or(t * (d.b1 + d.b2), d.a1);
      d.a2 = normalized_or(t * (d.b1 - d.b2), d.a2);
      d.b1 = normalized_or(t.transpose() * (d.a1 + d.a2), d.b1);
      d.b2 = normalized_or(t.transpose() * (d.a1 - d.a2), d.b2);
      const double val = chsh_value(t, d);
      if (val - prev < 1e-12) break;
      prev = val;
    }
    return std::make_pair(chsh_value(t, d), d);
  };

  ChshResult best;
  best.value = -1e300;
  std::mt19937_64 rng(seed);
  for (int r = 0; r < restarts; ++r) {
    Directions d{random_unit(rng), random_unit(rng), random_unit(rng),
                 random_unit(rng)};
    auto [val, dirs] = refine(d);
    if (val > best.value) {
      best.value = val;
      best.dirs = dirs;
    }
  }

  // Analytic construction from the top-two eigenvectors of T^t T; covers
  // stalled iterations and degenerate T.
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(tt);
  const Eigen::Vector3d u1 = es.eigenvectors().col(2);
  const Eigen::Vector3d u2 = es.eigenvectors().col(1);
  const double s1 = std::max(0.0, es.eigenvalues()(2));
  const double s2 = std::max(0.0, es.eigenvalues()(1));
  const double theta = std::atan2(std::sqrt(s2), std::sqrt(s1));
  Directions d;
  d.b1 = (std::cos(theta) * u1 + std::sin(theta) * u2).normalized();
  d.b2 = (std::cos(theta) * u1 - std::sin(theta) * u2).normalized();
  d.a1 = normalized_or(t * (d.b1 + d.b2), u1);
  d.a2 = normalized_or(t * (d.b1 - d.b2), u2);
  auto [val, dirs] = refine(d);
  if (val > best.value) {
    best.value = val;
    best.dirs = dirs;
  }
  return best;
}

double geometric_discord(const DensityMatrix& rho4) {
  const auto [a, b] = bloch_vectors(rho4);
  const Eigen::Matrix3d t = corr_matrix(rho4);
  const Eigen::Matrix3d k = a * a.transpose() + t * t.transpose();
  auto ev = detail::jacobi_eigenvalues(k);
  const double k_max = *std::max_element(ev.begin(), ev.end());
  return 0.25 * (a.squaredNorm() + (t * t.transpose()).trace() - k_max);
}

double rsp_fidelity(const DensityMatrix& rho4) {
  const SpinSpectrum s = spectrum(corr_matrix(rho4));
  return 0.5 * (s.s2 + s.s3);
}

}  // namespace triq
