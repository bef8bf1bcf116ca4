#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "triq/correlations.hpp"
#include "triq/relations.hpp"

using namespace triq;

namespace {

DensityMatrix werner(double w) {
  Eigen::Vector4cd singlet;
  singlet << 0, 1 / std::sqrt(2.0), -1 / std::sqrt(2.0), 0;
  Eigen::MatrixXcd m = w * (singlet * singlet.adjoint()) +
                       (1 - w) * 0.25 * Eigen::Matrix4cd::Identity();
  return DensityMatrix(m);
}

Eigen::Matrix3d random_rotation(std::uint64_t seed, bool reflect) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::Matrix3d g;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) g(r, c) = gauss(rng);
  Eigen::HouseholderQR<Eigen::Matrix3d> qr(g);
  Eigen::Matrix3d q = qr.householderQ();
  if (reflect) q.col(0) *= -1;
  return q;
}

Eigen::Matrix3d random_symmetric(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::Matrix3d g;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) g(r, c) = gauss(rng);
  return 0.5 * (g + g.transpose());
}

}  // namespace

TEST_CASE("bloch vectors of basic states") {
  Eigen::MatrixXcd up = Eigen::MatrixXcd::Zero(4, 4);
  up(0, 0) = 1;  // |00>
  const auto [a, b] = bloch_vectors(DensityMatrix(up));
  CHECK((a - Eigen::Vector3d(0, 0, 1)).norm() < 1e-14);
  CHECK((b - Eigen::Vector3d(0, 0, 1)).norm() < 1e-14);

  const auto [am, bm] =
      bloch_vectors(DensityMatrix(Eigen::MatrixXcd(Eigen::Matrix4cd::Identity() / 4.0)));
  CHECK(am.norm() < 1e-14);
  CHECK(bm.norm() < 1e-14);

  CHECK_THROWS_AS(
      bloch_vectors(DensityMatrix(Eigen::MatrixXcd(Eigen::Matrix2cd::Identity() / 2.0))),
      std::invalid_argument);
}

TEST_CASE("bloch vectors of the canonical AC pair match the closed forms") {
  std::mt19937_64 rng(31);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    CanonicalParams p;
    double norm = 0;
    for (double* l : {&p.l0, &p.l1, &p.l2, &p.l3, &p.l4}) {
      *l = std::abs(gauss(rng));
      norm += *l * *l;
    }
    for (double* l : {&p.l0, &p.l1, &p.l2, &p.l3, &p.l4}) *l /= std::sqrt(norm);
    p.phi = std::uniform_real_distribution<double>(0, 2 * M_PI)(rng);

    const PureState3 psi = PureState3::from_canonical(p);
    const auto [a, c] = bloch_vectors(partial_trace(psi, Pair::AC));
    CHECK((a - analytic::bloch(p, Party::A)).norm() < 1e-12);
    CHECK((c - analytic::bloch(p, Party::C)).norm() < 1e-12);
    CHECK(std::abs(a(2) - (2 * p.l0 * p.l0 - 1)) < 1e-12);

    // And the full correlation matrices against the closed forms.
    for (Pair pr : kAllPairs) {
      const Eigen::Matrix3d t = corr_matrix(partial_trace(psi, pr));
      CHECK((t - analytic::corr_matrix(p, pr)).cwiseAbs().maxCoeff() < 1e-12);
    }
  }
}

TEST_CASE("correlation matrices of named states") {
  Eigen::Vector4cd singlet;
  singlet << 0, 1 / std::sqrt(2.0), -1 / std::sqrt(2.0), 0;
  const DensityMatrix rho(Eigen::MatrixXcd(singlet * singlet.adjoint()));
  const Eigen::Matrix3d t = corr_matrix(rho);
  CHECK((t - Eigen::Matrix3d(Eigen::Vector3d(-1, -1, -1).asDiagonal()))
            .cwiseAbs()
            .maxCoeff() < 1e-14);

  CanonicalParams ghz;
  ghz.l0 = ghz.l4 = 1 / std::sqrt(2.0);
  const Eigen::Matrix3d tab =
      corr_matrix(partial_trace(PureState3::from_canonical(ghz), Pair::AB));
  CHECK((tab - Eigen::Matrix3d(Eigen::Vector3d(0, 0, 1).asDiagonal()))
            .cwiseAbs()
            .maxCoeff() < 1e-14);

  const Eigen::Matrix3d tw = corr_matrix(werner(0.37));
  CHECK((tw + 0.37 * Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("jacobi eigenvalues agree with Eigen's solver") {
  for (std::uint64_t s = 0; s < 200; ++s) {
    const Eigen::Matrix3d m = random_symmetric(s);
    auto ours = detail::jacobi_eigenvalues(m);
    std::sort(ours.begin(), ours.end());
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(m);
    for (int i = 0; i < 3; ++i)
      CHECK(std::abs(ours[static_cast<size_t>(i)] - es.eigenvalues()(i)) < 1e-12);
  }
  // Degenerate case.
  auto iso = detail::jacobi_eigenvalues(0.3 * Eigen::Matrix3d::Identity());
  for (double v : iso) CHECK(v == doctest::Approx(0.3).epsilon(1e-14));
}

TEST_CASE("spectrum examples") {
  const SpinSpectrum s1 =
      spectrum(Eigen::Vector3d(0, 0, 1).asDiagonal().toDenseMatrix());
  CHECK(s1.s1 == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(s1.s2 == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(s1.s3 == doctest::Approx(0.0).epsilon(1e-14));

  const double w = 0.41;
  const SpinSpectrum sw = spectrum(corr_matrix(werner(w)));
  CHECK(sw.s1 == doctest::Approx(w * w).epsilon(1e-12));
  CHECK(sw.s3 == doctest::Approx(w * w).epsilon(1e-12));

  // W state pair AB: T = diag(2/3, 2/3, -1/3), spectrum (4/9, 4/9, 1/9).
  // Oracle: the 4x4 reduced density matrix of |W> = (|001>+|010>+|100>)/sqrt(3).
  Vec8 wamp = Vec8::Zero();
  wamp(1) = wamp(2) = wamp(4) = 1 / std::sqrt(3.0);
  const Eigen::Matrix3d tw =
      corr_matrix(partial_trace(PureState3(wamp), Pair::AB));
  CHECK((tw - Eigen::Matrix3d(Eigen::Vector3d(2.0 / 3, 2.0 / 3, -1.0 / 3)
                                  .asDiagonal())).cwiseAbs().maxCoeff() < 1e-12);
  const SpinSpectrum sws = spectrum(tw);
  CHECK(sws.s1 == doctest::Approx(4.0 / 9).epsilon(1e-12));
  CHECK(sws.s2 == doctest::Approx(4.0 / 9).epsilon(1e-12));
  CHECK(sws.s3 == doctest::Approx(1.0 / 9).epsilon(1e-12));
}

TEST_CASE("decompose: frozen profiles") {
  const AnisotropyProfile p = decompose({1, 0, 0});
  CHECK(p.s_iso == doctest::Approx(1.0 / 3).epsilon(1e-14));
  CHECK(p.deltas[0] == doctest::Approx(2.0 / 3).epsilon(1e-14));
  CHECK(p.deltas[1] == doctest::Approx(-1.0 / 3).epsilon(1e-14));
  CHECK(p.deltas[2] == doctest::Approx(-1.0 / 3).epsilon(1e-14));
  CHECK(p.g1 == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(p.g2 == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(p.s_ani * p.s_ani == doctest::Approx(2.0 / 3).epsilon(1e-14));
  CHECK(p.v_ani == doctest::Approx(2.0 / 27).epsilon(1e-14));

  const double w2 = 0.3 * 0.3;
  const AnisotropyProfile iso = decompose({w2, w2, w2});
  CHECK(iso.g1 == 0.0);
  CHECK(iso.g2 == 0.0);
  CHECK(std::abs(iso.s_ani) < 1e-15);
  CHECK(std::abs(iso.v_ani) < 1e-15);

  const AnisotropyProfile pw = decompose({4.0 / 9, 4.0 / 9, 1.0 / 9});
  CHECK(pw.s_iso == doctest::Approx(1.0 / 3).epsilon(1e-14));
  CHECK(pw.deltas[0] == doctest::Approx(1.0 / 9).epsilon(1e-13));
  CHECK(pw.deltas[2] == doctest::Approx(-2.0 / 9).epsilon(1e-13));
  CHECK(pw.g1 == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(pw.g2 == doctest::Approx(1.0 / 3).epsilon(1e-13));
  CHECK(pw.v_ani == doctest::Approx(-2.0 / 729).epsilon(1e-12));
}

TEST_CASE("profile invariants hold on random states") {
  for (std::uint64_t s = 0; s < 100; ++s) {
    const AnisotropyProfile p = pair_profile(PureState3::haar_random(s), Pair::AB);
    CHECK(std::abs(p.deltas[0] + p.deltas[1] + p.deltas[2]) < 1e-12);
    CHECK(p.g1 >= -1e-12);
    CHECK(p.g2 >= -1e-12);
    CHECK(std::abs(p.g1 - (p.deltas[0] - p.deltas[1])) < 1e-12);
    CHECK(std::abs(p.g2 - (p.deltas[1] - p.deltas[2])) < 1e-12);
    double sq = 0;
    for (double d : p.deltas) sq += d * d;
    CHECK(std::abs(p.s_ani * p.s_ani - sq) < 1e-12);
  }
}

TEST_CASE("spectrum is invariant under local O(3) frames and transpose") {
  for (std::uint64_t s = 0; s < 50; ++s) {
    const Eigen::Matrix3d t =
        corr_matrix(partial_trace(PureState3::haar_random(s), Pair::AB));
    const Eigen::Matrix3d oa = random_rotation(2 * s, s % 2 == 0);
    const Eigen::Matrix3d ob = random_rotation(2 * s + 1, s % 3 == 0);
    const SpinSpectrum base = spectrum(t);
    const SpinSpectrum rot = spectrum(oa * t * ob.transpose());
    CHECK(std::abs(base.s1 - rot.s1) < 1e-10);
    CHECK(std::abs(base.s2 - rot.s2) < 1e-10);
    CHECK(std::abs(base.s3 - rot.s3) < 1e-10);

    const SpinSpectrum tr = spectrum(t.transpose());
    CHECK(std::abs(base.s1 - tr.s1) < 1e-10);
    CHECK(std::abs(base.s2 - tr.s2) < 1e-10);
    CHECK(std::abs(base.s3 - tr.s3) < 1e-10);
  }
}

TEST_CASE("isotropic strengths: pure sum to one, mixed stay below") {
  for (std::uint64_t s = 0; s < 50; ++s) {
    const PureState3 psi = PureState3::haar_random(s);
    double sum = 0;
    for (Pair pr : kAllPairs) sum += pair_profile(psi, pr).s_iso;
    CHECK(std::abs(sum - 1.0) < 1e-10);

    // s_iso^AB from the Bloch lengths on pure states.
    const double a2 = bloch_vector(partial_trace(psi, Party::A)).squaredNorm();
    const double b2 = bloch_vector(partial_trace(psi, Party::B)).squaredNorm();
    const double c2 = bloch_vector(partial_trace(psi, Party::C)).squaredNorm();
    CHECK(std::abs(pair_profile(psi, Pair::AB).s_iso -
                   (1 + 2 * c2 - a2 - b2) / 3.0) < 1e-10);
  }
  for (std::uint64_t s = 0; s < 20; ++s) {
    const PureState3 a = PureState3::haar_random(1000 + 2 * s);
    const PureState3 b = PureState3::haar_random(1001 + 2 * s);
    const DensityMatrix rho(0.5 * (a.amplitudes() * a.amplitudes().adjoint()) +
                            0.5 * (b.amplitudes() * b.amplitudes().adjoint()));
    CHECK(iso_sum(rho) <= 1.0 + 1e-10);
  }
}
