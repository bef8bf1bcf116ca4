#include "triq/correlations.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace triq {

namespace {

constexpr double kClampTol = 1e-12;

using Mat2c = Eigen::Matrix2cd;

const std::array<Mat2c, 3>& paulis() {
  static const std::array<Mat2c, 3> p = [] {
    std::array<Mat2c, 3> m;
    m[0] << 0, 1, 1, 0;
    m[1] << cplx(0, 0), cplx(0, -1), cplx(0, 1), cplx(0, 0);
    m[2] << 1, 0, 0, -1;
    return m;
  }();
  return p;
}

Eigen::Matrix4cd kron2(const Mat2c& a, const Mat2c& b) {
  Eigen::Matrix4cd out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  return out;
}

}  // namespace

Eigen::Vector3d bloch_vector(const DensityMatrix& rho2) {
  if (rho2.dim() != 2)
    throw std::invalid_argument("bloch_vector requires a single-qubit state");
  Eigen::Vector3d v;
  for (int j = 0; j < 3; ++j)
    v(j) = (rho2.matrix() * paulis()[j]).trace().real();
  return v;
}

std::pair<Eigen::Vector3d, Eigen::Vector3d> bloch_vectors(const DensityMatrix& rho4) {
  if (rho4.dim() != 4)
    throw std::invalid_argument("bloch_vectors requires a two-qubit state");
  const Mat2c id = Mat2c::Identity();
  Eigen::Vector3d a, b;
  for (int j = 0; j < 3; ++j) {
    a(j) = (rho4.matrix() * kron2(paulis()[j], id)).trace().real();
    b(j) = (rho4.matrix() * kron2(id, paulis()[j])).trace().real();
  }
  return {a, b};
}

Eigen::Matrix3d corr_matrix(const DensityMatrix& rho4) {
  if (rho4.dim() != 4)
    throw std::invalid_argument("corr_matrix requires a two-qubit state");
  Eigen::Matrix3d t;
  for (int j = 0; j < 3; ++j)
    for (int k = 0; k < 3; ++k)
      t(j, k) = (rho4.matrix() * kron2(paulis()[j], paulis()[k])).trace().real();
  return t;
}

namespace detail {

std::array<double, 3> jacobi_eigenvalues(const Eigen::Matrix3d& sym) {
  Eigen::Matrix3d a = 0.5 * (sym + sym.transpose());
  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  for (int sweep = 0; sweep < 64; ++sweep) {
    double off = 0;
    for (int p = 0; p < 3; ++p)
      for (int q = p + 1; q < 3; ++q) off += a(p, q) * a(p, q);
    if (off <= (1e-16 * scale) * (1e-16 * scale)) break;
    for (int p = 0; p < 3; ++p) {
      for (int q = p + 1; q < 3; ++q) {
        if (a(p, q) == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * a(p, q));
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        Eigen::Matrix3d rot = Eigen::Matrix3d::Identity();
        rot(p, p) = c;
        rot(q, q) = c;
        rot(p, q) = s;
        rot(q, p) = -s;
        a = rot.transpose() * a * rot;
        a(p, q) = a(q, p) = 0.0;  // exact by construction
      }
    }
  }
  return {a(0, 0), a(1, 1), a(2, 2)};
}

}  // namespace detail

SpinSpectrum spectrum(const Eigen::Matrix3d& t) {
  auto ev = detail::jacobi_eigenvalues(t * t.transpose());
  std::sort(ev.begin(), ev.end(), std::greater<double>());
  for (double& e : ev)
    if (e < 0 && e > -kClampTol) e = 0;
  return {ev[0], ev[1], ev[2]};
}

AnisotropyProfile decompose(const SpinSpectrum& spec) {
  AnisotropyProfile p;
  p.s_iso = (spec.s1 + spec.s2 + spec.s3) / 3.0;
  p.deltas = {spec.s1 - p.s_iso, spec.s2 - p.s_iso, spec.s3 - p.s_iso};
  p.g1 = spec.s1 - spec.s2;
  p.g2 = spec.s2 - spec.s3;
  double sq = 0;
  for (double d : p.deltas) sq += d * d;
  p.s_ani = std::sqrt(sq);
  p.v_ani = p.deltas[0] * p.deltas[1] * p.deltas[2];
  return p;
}

AnisotropyProfile pair_profile(const PureState3& psi, Pair pair) {
  return decompose(spectrum(corr_matrix(partial_trace(psi, pair))));
}

AnisotropyProfile pair_profile(const DensityMatrix& rho8, Pair pair) {
  return decompose(spectrum(corr_matrix(partial_trace(rho8, pair))));
}

}  // namespace triq
