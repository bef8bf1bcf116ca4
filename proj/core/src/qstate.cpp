#include "triq/qstate.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace triq {

namespace {

constexpr double kNormTol = 1e-12;
constexpr double kHermTol = 1e-12;
constexpr double kPsdTol = 1e-10;
constexpr double kUnitaryTol = 1e-10;

int qubit_index(Party p) {
  switch (p) {
    case Party::A: return 0;
    case Party::B: return 1;
    case Party::C: return 2;
  }
  throw std::invalid_argument("unknown party");
}

}  // namespace

const char* to_string(Party p) {
  switch (p) {
    case Party::A: return "A";
    case Party::B: return "B";
    case Party::C: return "C";
  }
  return "?";
}

const char* to_string(Pair p) {
  switch (p) {
    case Pair::AB: return "AB";
    case Pair::AC: return "AC";
    case Pair::BC: return "BC";
  }
  return "??";
}

Party complement(Pair p) {
  switch (p) {
    case Pair::AB: return Party::C;
    case Pair::AC: return Party::B;
    case Pair::BC: return Party::A;
  }
  throw std::invalid_argument("unknown pair");
}

void CanonicalParams::validate() const {
  const double ls[]{l0, l1, l2, l3, l4};
  double sum = 0;
  for (double l : ls) {
    if (l < 0) throw std::invalid_argument("canonical params: l_j must be >= 0");
    sum += l * l;
  }
  if (std::abs(sum - 1.0) > kNormTol)
    throw std::invalid_argument("canonical params: sum l_j^2 != 1");
}

void NoiseParams::validate() const {
  for (double e : {eta_a, eta_b, eta_c})
    if (e < 0.0 || e > 1.0)
      throw std::invalid_argument("noise params: eta outside [0,1]");
}

double NoiseParams::eta(Party p) const {
  switch (p) {
    case Party::A: return eta_a;
    case Party::B: return eta_b;
    case Party::C: return eta_c;
  }
  throw std::invalid_argument("unknown party");
}

PureState3::PureState3(const Vec8& amps) : amp_(amps) {
  if (std::abs(amp_.norm() - 1.0) > kNormTol)
    throw std::invalid_argument("pure state amplitudes are not normalized");
}

PureState3 PureState3::from_canonical(const CanonicalParams& p) {
  p.validate();
  Vec8 a = Vec8::Zero();
  a(0) = p.l0;                                     // |000>
  a(4) = p.l1 * std::polar(1.0, p.phi);            // |100>
  a(5) = p.l2;                                     // |101>
  a(6) = p.l3;                                     // |110>
  a(7) = p.l4;                                     // |111>
  return PureState3(a);
}

PureState3 PureState3::haar_random(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vec8 a;
  for (int i = 0; i < 8; ++i) {
    const double re = gauss(rng);
    const double im = gauss(rng);
    a(i) = cplx(re, im);
  }
  a /= a.norm();
  return PureState3(a);
}

int DensityMatrix::num_qubits() const {
  switch (dim()) {
    case 2: return 1;
    case 4: return 2;
    case 8: return 3;
  }
  return 0;
}

DensityMatrix::DensityMatrix(Eigen::MatrixXcd m) : m_(std::move(m)) {
  const auto n = m_.rows();
  if (m_.cols() != n || (n != 2 && n != 4 && n != 8))
    throw std::invalid_argument("density matrix must be square of dim 2, 4 or 8");
  if ((m_ - m_.adjoint()).cwiseAbs().maxCoeff() > kHermTol)
    throw std::invalid_argument("density matrix is not Hermitian");
  if (std::abs(m_.trace().real() - 1.0) > kHermTol ||
      std::abs(m_.trace().imag()) > kHermTol)
    throw std::invalid_argument("density matrix trace != 1");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m_, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -kPsdTol)
    throw std::invalid_argument("density matrix has a negative eigenvalue");
}

DensityMatrix DensityMatrix::from_pure(const PureState3& psi) {
  const Vec8& a = psi.amplitudes();
  return DensityMatrix(a * a.adjoint());
}

namespace {

// Applies U on the qubit at position q (0 = leftmost factor) of an
// n-qubit column vector.
Eigen::VectorXcd apply_one_qubit(const Eigen::VectorXcd& v, int n_qubits, int q,
                                 const Eigen::Matrix2cd& u) {
  const int dim = 1 << n_qubits;
  const int bit = 1 << (n_qubits - 1 - q);
  Eigen::VectorXcd out(dim);
  for (int i = 0; i < dim; ++i) {
    if (i & bit) continue;
    const int j = i | bit;
    out(i) = u(0, 0) * v(i) + u(0, 1) * v(j);
    out(j) = u(1, 0) * v(i) + u(1, 1) * v(j);
  }
  return out;
}

void require_unitary(const Eigen::Matrix2cd& u) {
  if ((u * u.adjoint() - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff() >
      kUnitaryTol)
    throw std::invalid_argument("local operation is not unitary");
}

// Partial trace over the qubits not in `keep_mask` (bit 0 = leftmost qubit).
Eigen::MatrixXcd trace_out(const Eigen::MatrixXcd& rho, int n_qubits,
                           unsigned keep_mask) {
  std::vector<int> keep, drop;
  for (int q = 0; q < n_qubits; ++q) {
    if (keep_mask & (1u << q))
      keep.push_back(q);
    else
      drop.push_back(q);
  }
  const int kd = 1 << static_cast<int>(keep.size());
  const int dd = 1 << static_cast<int>(drop.size());
  auto full_index = [&](int k, int t) {
    int idx = 0;
    for (size_t i = 0; i < keep.size(); ++i)
      if (k & (1 << (keep.size() - 1 - i))) idx |= 1 << (n_qubits - 1 - keep[i]);
    for (size_t i = 0; i < drop.size(); ++i)
      if (t & (1 << (drop.size() - 1 - i))) idx |= 1 << (n_qubits - 1 - drop[i]);
    return idx;
  };
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(kd, kd);
  for (int r = 0; r < kd; ++r)
    for (int c = 0; c < kd; ++c)
      for (int t = 0; t < dd; ++t)
        out(r, c) += rho(full_index(r, t), full_index(c, t));
  return out;
}

unsigned pair_mask(Pair p) {
  switch (p) {
    case Pair::AB: return 0b011;  // bits 0 (A) and 1 (B)
    case Pair::AC: return 0b101;
    case Pair::BC: return 0b110;
  }
  throw std::invalid_argument("unknown pair");
}

// Depolarizes the qubit at position q: rho -> eta rho + (1-eta) I_q/2 (x) tr_q rho.
Eigen::MatrixXcd depolarize_qubit(const Eigen::MatrixXcd& rho, int n_qubits,
                                  int q, double eta) {
  if (eta == 1.0) return rho;
  const int dim = static_cast<int>(rho.rows());
  const int bit = 1 << (n_qubits - 1 - q);
  Eigen::MatrixXcd out = eta * rho;
  const double w = (1.0 - eta) * 0.5;
  for (int r = 0; r < dim; ++r) {
    for (int c = 0; c < dim; ++c) {
      if ((r & bit) != (c & bit)) continue;
      // tr_q rho re-tensored with I/2 on qubit q
      out(r, c) += w * (rho(r & ~bit, c & ~bit) + rho(r | bit, c | bit));
    }
  }
  return out;
}

}  // namespace

PureState3 apply_local_unitary(const PureState3& psi, Party party,
                               const Eigen::Matrix2cd& u) {
  require_unitary(u);
  Eigen::VectorXcd v = apply_one_qubit(psi.amplitudes(), 3, qubit_index(party), u);
  return PureState3(Vec8(v));
}

DensityMatrix apply_local_unitary(const DensityMatrix& rho, Party party,
                                  const Eigen::Matrix2cd& u) {
  require_unitary(u);
  const int n = rho.num_qubits();
  const int q = qubit_index(party);
  if (q >= n) throw std::invalid_argument("party out of range for state dimension");
  Eigen::MatrixXcd m = rho.matrix();
  for (int c = 0; c < m.cols(); ++c)
    m.col(c) = apply_one_qubit(m.col(c), n, q, u);
  for (int r = 0; r < m.rows(); ++r) {
    Eigen::VectorXcd row = m.row(r).conjugate().transpose();
    m.row(r) = apply_one_qubit(row, n, q, u).conjugate().transpose();
  }
  return DensityMatrix(std::move(m));
}

DensityMatrix partial_trace(const PureState3& psi, Pair keep) {
  return partial_trace(DensityMatrix::from_pure(psi), keep);
}

DensityMatrix partial_trace(const PureState3& psi, Party keep) {
  return partial_trace(DensityMatrix::from_pure(psi), keep);
}

DensityMatrix partial_trace(const DensityMatrix& rho, Pair keep) {
  if (rho.dim() != 8)
    throw std::invalid_argument("pair partial trace requires a three-qubit state");
  return DensityMatrix(trace_out(rho.matrix(), 3, pair_mask(keep)));
}

DensityMatrix partial_trace(const DensityMatrix& rho, Party keep) {
  const int n = rho.num_qubits();
  const int q = qubit_index(keep);
  if (n < 2 || q >= n)
    throw std::invalid_argument("party out of range for partial trace");
  return DensityMatrix(trace_out(rho.matrix(), n, 1u << q));
}

DensityMatrix depolarize(const DensityMatrix& rho, const NoiseParams& noise) {
  noise.validate();
  const int n = rho.num_qubits();
  Eigen::MatrixXcd m = rho.matrix();
  const double etas[]{noise.eta_a, noise.eta_b, noise.eta_c};
  for (int q = 0; q < n; ++q) m = depolarize_qubit(m, n, q, etas[q]);
  return DensityMatrix(std::move(m));
}

DensityMatrix swap_qubits(const DensityMatrix& rho4) {
  if (rho4.dim() != 4)
    throw std::invalid_argument("swap_qubits requires a two-qubit state");
  const auto& m = rho4.matrix();
  Eigen::MatrixXcd out(4, 4);
  auto sw = [](int i) { return ((i & 1) << 1) | (i >> 1); };
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) out(sw(r), sw(c)) = m(r, c);
  return DensityMatrix(std::move(out));
}

namespace detail {

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace detail

}  // namespace triq
