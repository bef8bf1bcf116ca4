#include "triq/secretshare.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace triq {

namespace {

constexpr double kOrthoTol = 1e-10;

void require_orthogonal(const Eigen::Matrix3d& o) {
  if ((o * o.transpose() - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff() >
      kOrthoTol)
    throw std::invalid_argument("measurement frame is not orthogonal");
}

std::pair<double, double> pair_etas(const NoiseParams& noise, Pair pair) {
  switch (pair) {
    case Pair::AB: return {noise.eta_a, noise.eta_b};
    case Pair::AC: return {noise.eta_a, noise.eta_c};
    case Pair::BC: return {noise.eta_b, noise.eta_c};
  }
  throw std::invalid_argument("unknown pair");
}

}  // namespace

EncodingScheme::EncodingScheme(const PureState3& state0, const PureState3& state1,
                               double margin)
    : state0_(state0), state1_(state1), margin_(margin) {
  if (margin <= 0) throw std::invalid_argument("scheme margin must be positive");
  for (Pair pr : kAllPairs) {
    const AnisotropyProfile p0 = pair_profile(state0_, pr);
    const AnisotropyProfile p1 = pair_profile(state1_, pr);
    if (p0.g1 <= p0.g2 + margin)
      throw std::invalid_argument("bit-0 state violates g1 > g2 + margin");
    if (p1.g1 + margin >= p1.g2)
      throw std::invalid_argument("bit-1 state violates g1 + margin < g2");
  }
}

const PureState3& EncodingScheme::state_for(int bit) const {
  if (bit != 0 && bit != 1) throw std::invalid_argument("bit must be 0 or 1");
  return bit == 0 ? state0_ : state1_;
}

void ShotRecord::validate() const {
  if (shots_per_setting < 1)
    throw std::invalid_argument("shot record needs at least one shot per setting");
  for (int j = 0; j < 3; ++j)
    for (int k = 0; k < 3; ++k) {
      std::int64_t total = 0;
      for (std::int64_t c : counts[j][k]) {
        if (c < 0) throw std::invalid_argument("negative outcome count");
        total += c;
      }
      if (total != shots_per_setting)
        throw std::invalid_argument("setting is missing outcome counts");
    }
}

ShotRecord simulate_shots(const PureState3& psi, Pair pair,
                          const Eigen::Matrix3d& frame_a,
                          const Eigen::Matrix3d& frame_b,
                          const NoiseParams& noise, int shots_per_setting,
                          std::uint64_t seed) {
  if (shots_per_setting < 1)
    throw std::invalid_argument("need at least one shot per setting");
  require_orthogonal(frame_a);
  require_orthogonal(frame_b);
  noise.validate();

  const auto [eta1, eta2] = pair_etas(noise, pair);
  const DensityMatrix rho =
      depolarize(partial_trace(psi, pair), NoiseParams{eta1, eta2, 1.0});
  const auto [a, b] = bloch_vectors(rho);
  const Eigen::Matrix3d t = corr_matrix(rho);

  ShotRecord rec;
  rec.shots_per_setting = shots_per_setting;
  std::mt19937_64 rng(seed);
  for (int j = 0; j < 3; ++j) {
    for (int k = 0; k < 3; ++k) {
      const Eigen::Vector3d u = frame_a.col(j);
      const Eigen::Vector3d v = frame_b.col(k);
      const double ea = u.dot(a), eb = v.dot(b), eab = u.dot(t * v);
      // Born probabilities of the four outcome pairs.
      std::array<double, 4> p{};
      int idx = 0;
      for (double alpha : {1.0, -1.0})
        for (double beta : {1.0, -1.0})
          p[idx++] = std::max(
              0.0, 0.25 * (1 + alpha * ea + beta * eb + alpha * beta * eab));
      // Multinomial draw via sequential binomials.
      std::int64_t remaining = shots_per_setting;
      double mass = p[0] + p[1] + p[2] + p[3];
      for (int o = 0; o < 4; ++o) {
        if (o == 3 || mass <= 0) {
          rec.counts[j][k][o] = remaining;
          remaining = 0;
          break;
        }
        const double q = std::min(1.0, p[o] / mass);
        std::binomial_distribution<std::int64_t> bin(remaining, q);
        const std::int64_t n = bin(rng);
        rec.counts[j][k][o] = n;
        remaining -= n;
        mass -= p[o];
        if (remaining == 0) break;
      }
    }
  }
  return rec;
}

Eigen::Matrix3d empirical_corr(const ShotRecord& record) {
  record.validate();
  Eigen::Matrix3d t;
  for (int j = 0; j < 3; ++j)
    for (int k = 0; k < 3; ++k) {
      const auto& c = record.counts[j][k];
      t(j, k) = static_cast<double>(c[0] - c[1] - c[2] + c[3]) /
                static_cast<double>(record.shots_per_setting);
    }
  return t;
}

std::pair<double, double> estimate_gaps(const ShotRecord& record) {
  const AnisotropyProfile p = decompose(spectrum(empirical_corr(record)));
  return {p.g1, p.g2};
}

int decode_bit(double g1_hat, double g2_hat) {
  return g1_hat >= g2_hat ? 0 : 1;
}

Eigen::Matrix3d random_orthogonal(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::Matrix3d g;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) g(r, c) = gauss(rng);
  Eigen::HouseholderQR<Eigen::Matrix3d> qr(g);
  Eigen::Matrix3d q = qr.householderQ();
  // Fix the sign ambiguity of QR, then apply a random reflection so the
  // result covers all of O(3).
  Eigen::Matrix3d r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < 3; ++i)
    if (r(i, i) < 0) q.col(i) *= -1;
  if (rng() & 1u) q.col(0) *= -1;
  return q;
}

ProtocolReport run_protocol(const std::vector<int>& bits,
                            const EncodingScheme& scheme, Pair pair,
                            FramePolicy frames, const NoiseParams& noise,
                            int shots_per_setting, std::uint64_t seed) {
  ProtocolReport rep;
  rep.gap_estimates.reserve(bits.size());
  rep.decoded.reserve(bits.size());
  int correct = 0;
  for (size_t i = 0; i < bits.size(); ++i) {
    const std::uint64_t sub = detail::mix_seed(seed, i);
    Eigen::Matrix3d fa = Eigen::Matrix3d::Identity();
    Eigen::Matrix3d fb = Eigen::Matrix3d::Identity();
    if (frames == FramePolicy::RandomPerBlock) {
      fa = random_orthogonal(detail::mix_seed(sub, 1));
      fb = random_orthogonal(detail::mix_seed(sub, 2));
    }
    const ShotRecord rec =
        simulate_shots(scheme.state_for(bits[i]), pair, fa, fb, noise,
                       shots_per_setting, detail::mix_seed(sub, 3));
    const auto [g1, g2] = estimate_gaps(rec);
    const int decoded = decode_bit(g1, g2);
    rep.gap_estimates.push_back({g1, g2});
    rep.decoded.push_back(decoded);
    rep.mean_g1 += g1;
    rep.mean_g2 += g2;
    if (decoded == bits[i]) ++correct;
  }
  const double n = bits.empty() ? 1.0 : static_cast<double>(bits.size());
  rep.mean_g1 /= n;
  rep.mean_g2 /= n;
  rep.bit_errors = static_cast<int>(bits.size()) - correct;
  rep.accuracy = bits.empty() ? 1.0 : correct / n;
  return rep;
}

}  // namespace triq
