#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "triq/convexroof.hpp"

using namespace triq;

namespace {

DensityMatrix mix(const PureState3& a, const PureState3& b, double w) {
  return DensityMatrix(w * (a.amplitudes() * a.amplitudes().adjoint()) +
                       (1 - w) * (b.amplitudes() * b.amplitudes().adjoint()));
}

const AnisoFunctional kGapSum = [](const AnisotropyProfile& p) {
  return p.g1 + p.g2;
};

}  // namespace

TEST_CASE("random isometries are isometries and ensembles reconstruct rho") {
  for (std::uint64_t s = 0; s < 10; ++s) {
    const Eigen::MatrixXcd v = random_isometry(4, 2, s);
    CHECK((v.adjoint() * v - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff() <
          1e-12);
  }
  CHECK_THROWS_AS(random_isometry(2, 4, 0), std::invalid_argument);

  for (std::uint64_t s = 0; s < 10; ++s) {
    const DensityMatrix rho = mix(PureState3::haar_random(2 * s),
                                  PureState3::haar_random(2 * s + 1), 0.3);
    const Ensemble e = ensemble_from_isometry(rho, random_isometry(4, 2, 100 + s));
    CHECK(e.reconstruction_residual(rho) < 1e-10);
    double total = 0;
    for (const auto& [w, psi] : e.members) total += w;
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
  }

  const DensityMatrix rho =
      mix(PureState3::haar_random(900), PureState3::haar_random(901), 0.5);
  CHECK_THROWS_AS(ensemble_from_isometry(rho, random_isometry(4, 3, 0)),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      ensemble_from_isometry(rho, Eigen::MatrixXcd(2 * random_isometry(4, 2, 0))),
      std::invalid_argument);
}

TEST_CASE("state rank at threshold") {
  CHECK(state_rank(DensityMatrix::from_pure(PureState3::haar_random(1))) == 1);
  CHECK(state_rank(mix(PureState3::haar_random(2), PureState3::haar_random(3),
                       0.5)) == 2);
  CHECK(state_rank(DensityMatrix(
            Eigen::MatrixXcd(Eigen::MatrixXcd::Identity(8, 8) / 8.0))) == 8);
}

TEST_CASE("pure states collapse the roof exactly") {
  for (std::uint64_t s = 0; s < 20; ++s) {
    const PureState3 psi = PureState3::haar_random(s);
    const double direct = kGapSum(pair_profile(psi, Pair::AB));
    const double roof = convex_roof_estimate(
        DensityMatrix::from_pure(psi), kGapSum, {5, 10}, s);
    CHECK(roof == doctest::Approx(direct).epsilon(1e-12));
  }
}

TEST_CASE("roof estimate never exceeds a known decomposition average") {
  for (std::uint64_t s = 0; s < 15; ++s) {
    const PureState3 a = PureState3::haar_random(3000 + 2 * s);
    const PureState3 b = PureState3::haar_random(3001 + 2 * s);
    const double w = 0.2 + 0.05 * static_cast<double>(s % 10);
    const double avg = w * kGapSum(pair_profile(a, Pair::AB)) +
                       (1 - w) * kGapSum(pair_profile(b, Pair::AB));
    const double roof =
        convex_roof_estimate(mix(a, b, w), kGapSum, {20, 100}, s);
    CHECK(roof <= avg + 1e-8);
    CHECK(roof >= -1e-12);
  }
}

TEST_CASE("estimate is deterministic and monotone in the budget") {
  const DensityMatrix rho =
      mix(PureState3::haar_random(41), PureState3::haar_random(42), 0.6);
  const double base = convex_roof_estimate(rho, kGapSum, {10, 50}, 9);
  CHECK(base == convex_roof_estimate(rho, kGapSum, {10, 50}, 9));
  CHECK(convex_roof_estimate(rho, kGapSum, {20, 50}, 9) <= base + 1e-15);
  CHECK(convex_roof_estimate(rho, kGapSum, {10, 100}, 9) <= base + 1e-15);
  CHECK(convex_roof_estimate(rho, kGapSum, {20, 100}, 9) <= base + 1e-15);
}

TEST_CASE("roof value is pair-independent for invariant functionals") {
  const DensityMatrix rho =
      mix(PureState3::haar_random(51), PureState3::haar_random(52), 0.4);
  const double ab = convex_roof_estimate(rho, kGapSum, {10, 60}, 3, Pair::AB);
  const double ac = convex_roof_estimate(rho, kGapSum, {10, 60}, 3, Pair::AC);
  const double bc = convex_roof_estimate(rho, kGapSum, {10, 60}, 3, Pair::BC);
  // Each estimate is an upper bound on the same roof; they need not agree
  // exactly, but must stay close for modest mixing.
  CHECK(std::abs(ab - ac) < 0.05);
  CHECK(std::abs(ab - bc) < 0.05);
}

TEST_CASE("mixed-state gap tradeoff upper bound") {
  for (std::uint64_t s = 0; s < 8; ++s) {
    const DensityMatrix rho =
        mix(PureState3::haar_random(7000 + 2 * s),
            PureState3::haar_random(7001 + 2 * s), 0.5);
    const RelationReport r = mixed_tradeoff_check(rho, {10, 60}, s);
    CHECK(r.name.find("upper_bound") != std::string::npos);
    CHECK_MESSAGE(r.satisfied, r.lhs);
  }
}

TEST_CASE("dimension guard") {
  CHECK_THROWS_AS(
      convex_roof_estimate(
          DensityMatrix(Eigen::MatrixXcd(Eigen::Matrix4cd::Identity() / 4.0)),
          kGapSum, {1, 1}, 0),
      std::invalid_argument);
}
