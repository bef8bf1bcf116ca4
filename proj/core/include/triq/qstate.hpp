#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <Eigen/Dense>

// Complex-vector/matrix state core for three-qubit correlation analysis:
// construction, local operations, partial traces, depolarizing noise and
// seeded Haar-random generation.
//
// Index convention: tensor order A (x) B (x) C, basis index = 4*qA + 2*qB + qC.

namespace triq {

using cplx = std::complex<double>;
using Vec8 = Eigen::Matrix<cplx, 8, 1>;

enum class Party { A, B, C };
enum class Pair { AB, AC, BC };

inline constexpr std::array<Pair, 3> kAllPairs{Pair::AB, Pair::AC, Pair::BC};

const char* to_string(Party p);
const char* to_string(Pair p);

/// The party not contained in the given pair.
Party complement(Pair p);

/// Canonical five-parameter form of a pure three-qubit state:
/// l0|000> + l1 e^{i phi}|100> + l2|101> + l3|110> + l4|111>.
struct CanonicalParams {
  double l0 = 0, l1 = 0, l2 = 0, l3 = 0, l4 = 0;
  double phi = 0;  // radians

  /// Throws std::invalid_argument unless all l_j >= 0 and sum l_j^2 = 1 (1e-12).
  void validate() const;
};

/// Per-qubit isotropic (depolarizing) noise strengths, each in [0,1].
/// eta = 1 is the identity channel, eta = 0 fully depolarizes.
struct NoiseParams {
  double eta_a = 1.0, eta_b = 1.0, eta_c = 1.0;

  void validate() const;
  double eta(Party p) const;
};

/// Normalized 8-amplitude state vector of three qubits.
class PureState3 {
 public:
  /// Throws std::invalid_argument unless |amps| = 1 within 1e-12.
  explicit PureState3(const Vec8& amps);

  static PureState3 from_canonical(const CanonicalParams& params);

  /// Haar-distributed pure state; deterministic given the seed.
  static PureState3 haar_random(std::uint64_t seed);

  const Vec8& amplitudes() const { return amp_; }
  cplx amplitude(int basis_index) const { return amp_(basis_index); }

 private:
  Vec8 amp_;
};

/// Hermitian, unit-trace, PSD matrix of dimension 2, 4 or 8.
class DensityMatrix {
 public:
  /// Throws std::invalid_argument unless the matrix is a valid state:
  /// dim in {2,4,8}, Hermitian within 1e-12, trace 1 within 1e-12,
  /// eigenvalues >= -1e-10.
  explicit DensityMatrix(Eigen::MatrixXcd m);

  static DensityMatrix from_pure(const PureState3& psi);

  int dim() const { return static_cast<int>(m_.rows()); }
  int num_qubits() const;
  const Eigen::MatrixXcd& matrix() const { return m_; }

 private:
  Eigen::MatrixXcd m_;
};

/// Apply a 2x2 unitary to one tensor factor. Party A/B/C addresses the
/// first/second/third qubit; a 4-dim state has parties A and B, a 2-dim
/// state only A. Throws if U is not unitary within 1e-10 or the party is
/// out of range for the state's dimension.
PureState3 apply_local_unitary(const PureState3& psi, Party party,
                               const Eigen::Matrix2cd& u);
DensityMatrix apply_local_unitary(const DensityMatrix& rho, Party party,
                                  const Eigen::Matrix2cd& u);

/// Reduced state on the kept pair (input must be three-qubit).
DensityMatrix partial_trace(const PureState3& psi, Pair keep);
DensityMatrix partial_trace(const DensityMatrix& rho, Pair keep);

/// Reduced state on a single party (three-qubit input, or two-qubit input
/// with party A/B).
DensityMatrix partial_trace(const PureState3& psi, Party keep);
DensityMatrix partial_trace(const DensityMatrix& rho, Party keep);

/// Tensor-product depolarizing channel: qubit k is mapped by
/// rho_k -> eta_k rho_k + (1 - eta_k) I/2. For 4-dim states eta_a/eta_b
/// apply to the two factors, for 2-dim states only eta_a.
DensityMatrix depolarize(const DensityMatrix& rho, const NoiseParams& noise);

/// Swap the two tensor factors of a two-qubit density matrix.
DensityMatrix swap_qubits(const DensityMatrix& rho4);

namespace detail {
/// SplitMix64 stream-derivation step; used to derive independent
/// sub-seeds from (master seed, index) without correlated streams.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index);
}  // namespace detail

}  // namespace triq
