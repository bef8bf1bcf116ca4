#include "triq/relations.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace triq {

namespace {

struct PairData {
  DensityMatrix rho;  // party order as named by the pair
  AnisotropyProfile profile;
  SpinSpectrum spec;
  double c2 = 0;  // squared concurrence
  double m = 0;
  double f = 0;
};

PairData make_pair_data(DensityMatrix rho4) {
  PairData d{std::move(rho4)};
  d.spec = spectrum(corr_matrix(d.rho));
  d.profile = decompose(d.spec);
  const double c = concurrence(d.rho);
  d.c2 = c * c;
  d.m = d.spec.s1 + d.spec.s2;
  d.f = 0.5 * (d.spec.s2 + d.spec.s3);
  return d;
}

std::array<PairData, 3> all_pairs(const DensityMatrix& rho8) {
  return {make_pair_data(partial_trace(rho8, Pair::AB)),
          make_pair_data(partial_trace(rho8, Pair::AC)),
          make_pair_data(partial_trace(rho8, Pair::BC))};
}

double aniso_invariance_residual(const std::array<PairData, 3>& p) {
  double res = 0;
  for (int j = 0; j < 3; ++j) {
    res = std::max(res, std::abs(p[0].profile.deltas[j] - p[1].profile.deltas[j]));
    res = std::max(res, std::abs(p[0].profile.deltas[j] - p[2].profile.deltas[j]));
  }
  return res;
}

RelationReport equality_report(std::string name, double lhs, double rhs,
                               std::string label, double tol = kEqualityTol) {
  RelationReport r;
  r.name = std::move(name);
  r.lhs = lhs;
  r.rhs = rhs;
  r.residual = std::abs(lhs - rhs);
  r.satisfied = r.residual <= tol;
  r.state_label = std::move(label);
  return r;
}

RelationReport inequality_report(std::string name, double lhs, double rhs,
                                 std::string label,
                                 double slack = kInequalitySlack) {
  RelationReport r;
  r.name = std::move(name);
  r.lhs = lhs;
  r.rhs = rhs;
  r.residual = lhs - rhs;
  r.satisfied = r.residual <= slack;
  r.state_label = std::move(label);
  return r;
}

Eigen::Vector3d random_unit(std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::Vector3d v;
  do {
    v << gauss(rng), gauss(rng), gauss(rng);
  } while (v.norm() < 1e-8);
  return v.normalized();
}

// Hub permutations: for hub X, the indices of pairs XY and XZ in
// (AB, AC, BC) order, and the opposite pair YZ.
struct Hub {
  Party hub;
  int first, second, opposite;
};
constexpr std::array<Hub, 3> kHubs{{{Party::A, 0, 1, 2},
                                    {Party::B, 0, 2, 1},
                                    {Party::C, 1, 2, 0}}};

// Reduced pair with the hub party as the first tensor factor (needed by
// the directional geometric discord).
DensityMatrix hub_first(const PairData& d, Pair pair, Party hub) {
  const bool hub_is_first = (pair == Pair::AB || pair == Pair::AC)
                                ? hub == Party::A
                                : hub == Party::B;
  return hub_is_first ? d.rho : swap_qubits(d.rho);
}

Pair pair_of_index(int i) { return kAllPairs[static_cast<size_t>(i)]; }

std::vector<RelationReport> monogamy_common(const std::array<PairData, 3>& p,
                                            bool pure, double tau,
                                            const MonogamyOptions& opts,
                                            const std::string& label) {
  std::vector<RelationReport> out;
  std::array<double, 3> chsh_opt{};
  for (int i = 0; i < 3; ++i)
    chsh_opt[i] =
        chsh_optimize(p[i].rho, detail::mix_seed(opts.seed, 11 + i)).value;

  for (const Hub& h : kHubs) {
    const std::string hub = to_string(h.hub);
    const PairData& x = p[h.first];
    const PairData& y = p[h.second];

    out.push_back(inequality_report("monogamy_M_" + hub, x.m + y.m, 2.0, label));
    if (pure) {
      out.push_back(equality_report("monogamy_M_identity_" + hub, x.m + y.m,
                                    2.0 * (1.0 - p[h.opposite].spec.s3), label));
    }

    // CHSH expectation monogamy at per-pair optima plus random probes.
    double worst = chsh_opt[h.first] * chsh_opt[h.first] +
                   chsh_opt[h.second] * chsh_opt[h.second];
    if (opts.random_direction_draws > 0) {
      std::mt19937_64 rng(detail::mix_seed(opts.seed, 17 + h.first));
      const Eigen::Matrix3d tx = corr_matrix(x.rho);
      const Eigen::Matrix3d ty = corr_matrix(y.rho);
      for (int i = 0; i < opts.random_direction_draws; ++i) {
        Directions dx{random_unit(rng), random_unit(rng), random_unit(rng),
                      random_unit(rng)};
        Directions dy{random_unit(rng), random_unit(rng), random_unit(rng),
                      random_unit(rng)};
        const double bx = dx.a1.dot(tx * (dx.b1 + dx.b2)) +
                          dx.a2.dot(tx * (dx.b1 - dx.b2));
        const double by = dy.a1.dot(ty * (dy.b1 + dy.b2)) +
                          dy.a2.dot(ty * (dy.b1 - dy.b2));
        worst = std::max(worst, bx * bx + by * by);
      }
    }
    out.push_back(inequality_report("chsh_monogamy_" + hub, worst, 8.0, label));

    const double dx = geometric_discord(hub_first(x, pair_of_index(h.first), h.hub));
    const double dy = geometric_discord(hub_first(y, pair_of_index(h.second), h.hub));
    out.push_back(inequality_report("discord_monogamy_" + hub, dx + dy, 0.5, label));

    out.push_back(inequality_report("rsp_monogamy_" + hub, x.f + y.f, 1.0, label));
  }

  if (pure) {
    const double max_m = std::max({p[0].m, p[1].m, p[2].m});
    out.push_back(inequality_report("complementarity_tau", max_m + tau, 2.0, label));
    out.push_back(inequality_report("tradeoff_gaps",
                                    max_m + p[0].profile.g1 + p[0].profile.g2,
                                    2.0, label));
  }
  return out;
}

}  // namespace

RelationReport check_aniso_invariance(const PureState3& psi,
                                      const std::string& label) {
  const auto p = all_pairs(DensityMatrix::from_pure(psi));
  return equality_report("aniso_invariance", aniso_invariance_residual(p), 0.0,
                         label);
}

RelationReport check_aniso_invariance(const DensityMatrix& rho8,
                                      const std::string& label) {
  if (rho8.dim() != 8)
    throw std::invalid_argument("aniso invariance requires a three-qubit state");
  const auto p = all_pairs(rho8);
  return equality_report("aniso_invariance", aniso_invariance_residual(p), 0.0,
                         label);
}

RelationReport check_iso_sum(const PureState3& psi, const std::string& label) {
  const double sum = iso_sum(DensityMatrix::from_pure(psi));
  return equality_report("iso_sum", sum, 1.0, label, 1e-10);
}

double iso_sum(const DensityMatrix& rho8) {
  double sum = 0;
  for (Pair pr : kAllPairs) sum += pair_profile(rho8, pr).s_iso;
  return sum;
}

RelationReport ordering_chain(const PureState3& psi, const std::string& label) {
  const DensityMatrix rho8 = DensityMatrix::from_pure(psi);
  const auto p = all_pairs(rho8);
  const double a2 = bloch_vector(partial_trace(rho8, Party::A)).squaredNorm();
  const double b2 = bloch_vector(partial_trace(rho8, Party::B)).squaredNorm();
  const double c2 = bloch_vector(partial_trace(rho8, Party::C)).squaredNorm();

  // The Bloch triple pairing: pair AB <-> c^2, AC <-> b^2, BC <-> a^2.
  const std::array<double, 3> bloch2{c2, b2, a2};
  const std::array<double, 3> siso{p[0].profile.s_iso, p[1].profile.s_iso,
                                   p[2].profile.s_iso};
  const std::array<double, 3> conc2{p[0].c2, p[1].c2, p[2].c2};
  const std::array<double, 3> fid{p[0].f, p[1].f, p[2].f};
  const std::array<double, 3> mpar{p[0].m, p[1].m, p[2].m};

  // Chain equalities across each pair of pairs.
  double residual = 0;
  const std::array<std::pair<int, int>, 3> idx{{{0, 1}, {1, 2}, {2, 0}}};
  for (auto [i, j] : idx) {
    const std::array<double, 5> chain{
        bloch2[i] - bloch2[j], siso[i] - siso[j], conc2[i] - conc2[j],
        fid[i] - fid[j], 0.5 * (mpar[i] - mpar[j])};
    const auto [lo, hi] = std::minmax_element(chain.begin(), chain.end());
    residual = std::max(residual, *hi - *lo);
  }

  // Common ordering of the five triples, with 1e-9 ties.
  bool order_ok = true;
  const std::array<const std::array<double, 3>*, 5> triples{&bloch2, &siso,
                                                            &conc2, &fid, &mpar};
  for (auto [i, j] : idx) {
    int sign = 0;
    for (const auto* t : triples) {
      const double d = (*t)[i] - (*t)[j];
      if (std::abs(d) <= kEqualityTol) continue;
      const int s = d > 0 ? 1 : -1;
      if (sign == 0)
        sign = s;
      else if (sign != s)
        order_ok = false;
    }
  }

  RelationReport r = equality_report("ordering_chain", residual, 0.0, label);
  r.satisfied = r.satisfied && order_ok;
  return r;
}

std::vector<RelationReport> monogamy_report(const PureState3& psi,
                                            const MonogamyOptions& opts,
                                            const std::string& label) {
  const auto p = all_pairs(DensityMatrix::from_pure(psi));
  return monogamy_common(p, true, three_tangle(psi), opts, label);
}

std::vector<RelationReport> monogamy_report(const DensityMatrix& rho8,
                                            const MonogamyOptions& opts,
                                            const std::string& label) {
  if (rho8.dim() != 8)
    throw std::invalid_argument("monogamy report requires a three-qubit state");
  const auto p = all_pairs(rho8);
  return monogamy_common(p, false, 0.0, opts, label);
}

RelationReport wclass_oracle(const CanonicalParams& params) {
  params.validate();
  if (params.l4 != 0.0)
    throw std::invalid_argument("wclass oracle requires l4 = 0");
  if (params.l0 <= 0.0)
    throw std::invalid_argument("wclass oracle requires l0 > 0");

  const PureState3 psi = PureState3::from_canonical(params);
  double residual = 0;
  for (Pair pr : kAllPairs) {
    const SpinSpectrum num = spectrum(corr_matrix(partial_trace(psi, pr)));
    const auto closed = analytic::wclass_spectrum(params, pr);
    residual = std::max({residual, std::abs(num.s1 - closed[0]),
                         std::abs(num.s2 - closed[1]),
                         std::abs(num.s3 - closed[2])});
  }
  const AnisotropyProfile prof = pair_profile(psi, Pair::AB);
  residual = std::max(residual,
                      std::abs(prof.v_ani - analytic::wclass_v_ani(params)));
  residual = std::max(residual, std::abs(prof.s_ani * prof.s_ani -
                                         analytic::s_ani_squared(params)));
  return equality_report("wclass_closed_forms", residual, 0.0, "wclass");
}

RelationReport marginal_consistency(const std::array<DensityMatrix, 3>& singles) {
  std::array<double, 3> len{};
  for (int i = 0; i < 3; ++i) {
    if (singles[i].dim() != 2)
      throw std::invalid_argument("single-qubit marginals required");
    len[i] = bloch_vector(singles[i]).norm();
  }
  double worst = -1e300;
  for (int i = 0; i < 3; ++i) {
    const int j = (i + 1) % 3, k = (i + 2) % 3;
    worst = std::max(worst, len[i] + len[j] - 1.0 - len[k]);
  }
  return inequality_report("marginal_consistency_single", worst, 0.0, "");
}

RelationReport marginal_consistency_pairs(const std::array<DensityMatrix, 3>& pairs) {
  std::array<AnisotropyProfile, 3> prof;
  double sum = 0;
  for (int i = 0; i < 3; ++i) {
    if (pairs[i].dim() != 4)
      throw std::invalid_argument("two-qubit marginals required");
    prof[i] = decompose(spectrum(corr_matrix(pairs[i])));
    sum += prof[i].s_iso;
  }
  double residual = std::abs(sum - 1.0);
  for (int j = 0; j < 3; ++j) {
    residual = std::max(residual, std::abs(prof[0].deltas[j] - prof[1].deltas[j]));
    residual = std::max(residual, std::abs(prof[0].deltas[j] - prof[2].deltas[j]));
  }
  return equality_report("marginal_consistency_pairs_necessary", residual, 0.0, "");
}

RelationReport check_horodecki_identity(const PureState3& psi,
                                        const std::string& label) {
  const auto p = all_pairs(DensityMatrix::from_pure(psi));
  const double rhs = 1.0 + p[0].spec.s3 - p[1].spec.s3 - p[2].spec.s3;
  return equality_report("horodecki_identity", p[0].m, rhs, label);
}

namespace analytic {

Eigen::Vector3d bloch(const CanonicalParams& p, Party party) {
  const double cp = std::cos(p.phi), sp = std::sin(p.phi);
  switch (party) {
    case Party::A:
      return {2 * p.l0 * p.l1 * cp, 2 * p.l0 * p.l1 * sp, 2 * p.l0 * p.l0 - 1};
    case Party::B:
      return {2 * p.l1 * p.l3 * cp + 2 * p.l2 * p.l4, -2 * p.l1 * p.l3 * sp,
              1 - 2 * p.l3 * p.l3 - 2 * p.l4 * p.l4};
    case Party::C:
      return {2 * p.l1 * p.l2 * cp + 2 * p.l3 * p.l4, -2 * p.l1 * p.l2 * sp,
              1 - 2 * p.l2 * p.l2 - 2 * p.l4 * p.l4};
  }
  throw std::invalid_argument("unknown party");
}

Eigen::Matrix3d corr_matrix(const CanonicalParams& p, Pair pair) {
  const double cp = std::cos(p.phi), sp = std::sin(p.phi);
  const double l0 = p.l0, l1 = p.l1, l2 = p.l2, l3 = p.l3, l4 = p.l4;
  Eigen::Matrix3d t;
  switch (pair) {
    case Pair::AB:
      t << 2 * l0 * l3, 0, 2 * l0 * l1 * cp,
           0, -2 * l0 * l3, 2 * l0 * l1 * sp,
           -2 * l1 * l3 * cp - 2 * l2 * l4, 2 * l1 * l3 * sp,
           1 - 2 * l1 * l1 - 2 * l2 * l2;
      return t;
    case Pair::AC:
      t << 2 * l0 * l2, 0, 2 * l0 * l1 * cp,
           0, -2 * l0 * l2, 2 * l0 * l1 * sp,
           -2 * l1 * l2 * cp - 2 * l3 * l4, 2 * l1 * l2 * sp,
           1 - 2 * l1 * l1 - 2 * l3 * l3;
      return t;
    case Pair::BC:
      t << 2 * l2 * l3 + 2 * l1 * l4 * cp, -2 * l1 * l4 * sp,
           2 * l1 * l3 * cp - 2 * l2 * l4,
           -2 * l1 * l4 * sp, 2 * l2 * l3 - 2 * l1 * l4 * cp,
           -2 * l1 * l3 * sp,
           2 * l1 * l2 * cp - 2 * l3 * l4, -2 * l1 * l2 * sp,
           1 - 2 * l2 * l2 - 2 * l3 * l3;
      return t;
  }
  throw std::invalid_argument("unknown pair");
}

double s_iso(const CanonicalParams& p, Pair pair) {
  const double l0 = p.l0 * p.l0, l1 = p.l1 * p.l1, l2 = p.l2 * p.l2,
               l3 = p.l3 * p.l3, l4 = p.l4 * p.l4;
  const double cross = p.l1 * p.l2 * p.l3 * p.l4 * std::cos(p.phi);
  switch (pair) {
    case Pair::AB:
      return (1 + 8 * l0 * l3 - 4 * l0 * l2 - 4 * l1 * l4 - 4 * l2 * l3 +
              8 * cross) / 3.0;
    case Pair::AC:
      return (1 + 8 * l0 * l2 - 4 * l0 * l3 - 4 * l1 * l4 - 4 * l2 * l3 +
              8 * cross) / 3.0;
    case Pair::BC:
      return (1 - 4 * l0 * l2 - 4 * l0 * l3 + 8 * l1 * l4 + 8 * l2 * l3 -
              16 * cross) / 3.0;
  }
  throw std::invalid_argument("unknown pair");
}

double s_ani_squared(const CanonicalParams& p) {
  const double l0 = p.l0, l1 = p.l1, l2 = p.l2, l3 = p.l3, l4 = p.l4;
  const double cp = std::cos(p.phi), sp = std::sin(p.phi);
  const double u = l1 * l1 + l2 * l2 + l3 * l3;
  const double big1 = 1 - 2 * l0 * l0 * (3 * l1 * l1 + 2 * l2 * l2 + 2 * l3 * l3) -
                      4 * l1 * l1 * l4 * l4 - 4 * l2 * l2 * l3 * l3 +
                      8 * l1 * l2 * l3 * l4 * cp;
  const double big2 = 2 * l0 * l2 * l3 * l4 + l0 * l1 * (2 * u - 1) * cp;
  return (2.0 / 3.0) * big1 * big1 + 8 * big2 * big2 +
         8 * l0 * l0 * l1 * l1 *
             (l0 * l0 * l1 * l1 + (2 * u - 1) * (2 * u - 1) * sp * sp);
}

double three_tangle(const CanonicalParams& p) {
  return 4 * p.l0 * p.l0 * p.l4 * p.l4;
}

double concurrence_squared(const CanonicalParams& p, Pair pair) {
  switch (pair) {
    case Pair::AB: return 4 * p.l0 * p.l0 * p.l3 * p.l3;
    case Pair::AC: return 4 * p.l0 * p.l0 * p.l2 * p.l2;
    case Pair::BC:
      return 4 * p.l2 * p.l2 * p.l3 * p.l3 + 4 * p.l1 * p.l1 * p.l4 * p.l4 -
             8 * p.l1 * p.l2 * p.l3 * p.l4 * std::cos(p.phi);
  }
  throw std::invalid_argument("unknown pair");
}

namespace {
std::array<double, 3> wclass_spectrum_raw(double l0, double l1, double l2,
                                          double l3) {
  const double a = (1 - 2 * l2 * l2) * (1 - 2 * l2 * l2) +
                   4 * (l0 * l0 * l3 * l3 + l1 * l1 * l2 * l2);
  const double disc = std::max(
      0.0, a * a - 16 * l0 * l0 * l3 * l3 * (1 - 2 * l2 * l2) * (1 - 2 * l2 * l2));
  const double root = std::sqrt(disc);
  std::array<double, 3> s{0.5 * (a + root), 4 * l0 * l0 * l3 * l3,
                          0.5 * (a - root)};
  std::sort(s.begin(), s.end(), std::greater<double>());
  return s;
}
}  // namespace

std::array<double, 3> wclass_spectrum(const CanonicalParams& p, Pair pair) {
  switch (pair) {
    case Pair::AB: return wclass_spectrum_raw(p.l0, p.l1, p.l2, p.l3);
    case Pair::AC: return wclass_spectrum_raw(p.l0, p.l1, p.l3, p.l2);
    case Pair::BC: return wclass_spectrum_raw(p.l2, p.l1, p.l0, p.l3);
  }
  throw std::invalid_argument("unknown pair");
}

double wclass_v_ani(const CanonicalParams& p) {
  const double l0 = p.l0, l1 = p.l1, l2 = p.l2, l3 = p.l3;
  const double a = (1 - 2 * l2 * l2) * (1 - 2 * l2 * l2) +
                   4 * (l0 * l0 * l3 * l3 + l1 * l1 * l2 * l2);
  return (2.0 / 27.0) *
         (1 - 4 * (l0 * l0 * l2 * l2 + l0 * l0 * l3 * l3 + l2 * l2 * l3 * l3)) *
         (a * a -
          16 * l0 * l0 * l3 * l3 * (1 - 2 * l2 * l2) * (1 - 2 * l2 * l2) +
          8 * l0 * l0 * l1 * l1 * l2 * l2 * l3 * l3);
}

}  // namespace analytic

}  // namespace triq
