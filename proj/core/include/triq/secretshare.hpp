#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "triq/correlations.hpp"
#include "triq/qstate.hpp"

// Shot-level simulator of the reference-frame-independent statistical
// secret-sharing protocol: a bit is encoded in the ordering of the
// eigenvalue gaps g1, g2, which any two parties can estimate from pairwise
// spin statistics in arbitrary local frames.

namespace triq {

/// Bit-0 state must have g1 > g2 + margin (ds2 < 0) on every pair, bit-1
/// state g1 + margin < g2 (ds2 > 0). Construction rejects schemes that
/// violate the margin.
class EncodingScheme {
 public:
  EncodingScheme(const PureState3& state0, const PureState3& state1,
                 double margin = 0.25);

  const PureState3& state_for(int bit) const;
  double margin() const { return margin_; }

 private:
  PureState3 state0_, state1_;
  double margin_;
};

/// Outcome counts of spin-pair measurements: nine settings (j,k), each with
/// counts over the four outcome pairs (+,+), (+,-), (-,+), (-,-).
struct ShotRecord {
  int shots_per_setting = 0;
  // counts[j][k][2*(alpha<0) + (beta<0)]
  std::array<std::array<std::array<std::int64_t, 4>, 3>, 3> counts{};

  /// Throws std::invalid_argument unless all nine settings carry
  /// shots_per_setting outcomes.
  void validate() const;
};

/// Draws N outcome pairs per setting from the exact Born distribution of
/// spin measurements along the frame-rotated axes on the depolarized
/// reduced pair. Frames must be orthogonal within 1e-10. Deterministic
/// given the seed.
ShotRecord simulate_shots(const PureState3& psi, Pair pair,
                          const Eigen::Matrix3d& frame_a,
                          const Eigen::Matrix3d& frame_b,
                          const NoiseParams& noise, int shots_per_setting,
                          std::uint64_t seed);

/// Empirical correlation matrix: T_jk = mean outcome product at setting (j,k).
Eigen::Matrix3d empirical_corr(const ShotRecord& record);

/// Gap estimates from the spectrum of the empirical T; the local frames
/// cancel because the spectrum of T T^t is orthogonally invariant.
std::pair<double, double> estimate_gaps(const ShotRecord& record);

/// 0 if g1_hat > g2_hat else 1; ties decode to 0.
int decode_bit(double g1_hat, double g2_hat);

enum class FramePolicy { Fixed, RandomPerBlock };

struct ProtocolReport {
  double accuracy = 0;
  int bit_errors = 0;
  double mean_g1 = 0, mean_g2 = 0;
  std::vector<std::array<double, 2>> gap_estimates;  // per bit
  std::vector<int> decoded;
};

/// End-to-end encode -> simulate -> estimate -> decode over a bit string.
/// Per-bit simulations derive independent seeds from (seed, bit index).
ProtocolReport run_protocol(const std::vector<int>& bits,
                            const EncodingScheme& scheme, Pair pair,
                            FramePolicy frames, const NoiseParams& noise,
                            int shots_per_setting, std::uint64_t seed);

/// Haar-random element of O(3), reflections included.
Eigen::Matrix3d random_orthogonal(std::uint64_t seed);

}  // namespace triq
