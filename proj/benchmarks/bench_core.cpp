#include <benchmark/benchmark.h>

#include "triq/convexroof.hpp"
#include "triq/measures.hpp"
#include "triq/relations.hpp"
#include "triq/secretshare.hpp"

using namespace triq;

namespace {

DensityMatrix random_pair(std::uint64_t seed) {
  return partial_trace(PureState3::haar_random(seed), Pair::AB);
}

void BM_HaarState(benchmark::State& state) {
  std::uint64_t s = 0;
  for (auto _ : state)
    benchmark::DoNotOptimize(PureState3::haar_random(s++));
}
BENCHMARK(BM_HaarState);

void BM_PairProfile(benchmark::State& state) {
  const PureState3 psi = PureState3::haar_random(1);
  for (auto _ : state)
    benchmark::DoNotOptimize(pair_profile(psi, Pair::AB));
}
BENCHMARK(BM_PairProfile);

void BM_JacobiSpectrum(benchmark::State& state) {
  const Eigen::Matrix3d t = corr_matrix(random_pair(2));
  const Eigen::Matrix3d s = t * t.transpose();
  for (auto _ : state)
    benchmark::DoNotOptimize(detail::jacobi_eigenvalues(s));
}
BENCHMARK(BM_JacobiSpectrum);

void BM_Concurrence(benchmark::State& state) {
  const DensityMatrix rho = random_pair(3);
  for (auto _ : state)
    benchmark::DoNotOptimize(concurrence(rho));
}
BENCHMARK(BM_Concurrence);

void BM_ChshOptimize(benchmark::State& state) {
  const DensityMatrix rho = random_pair(4);
  for (auto _ : state)
    benchmark::DoNotOptimize(chsh_optimize(rho, 0, 5));
}
BENCHMARK(BM_ChshOptimize);

void BM_OrderingChain(benchmark::State& state) {
  const PureState3 psi = PureState3::haar_random(5);
  for (auto _ : state)
    benchmark::DoNotOptimize(ordering_chain(psi));
}
BENCHMARK(BM_OrderingChain);

void BM_ConvexRoof(benchmark::State& state) {
  const PureState3 a = PureState3::haar_random(6);
  const PureState3 b = PureState3::haar_random(7);
  const DensityMatrix rho(0.5 * (a.amplitudes() * a.amplitudes().adjoint()) +
                          0.5 * (b.amplitudes() * b.amplitudes().adjoint()));
  const AnisoFunctional q = [](const AnisotropyProfile& p) {
    return p.g1 + p.g2;
  };
  for (auto _ : state)
    benchmark::DoNotOptimize(
        convex_roof_estimate(rho, q, {static_cast<int>(state.range(0)), 20}, 8));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ConvexRoof)->Arg(1)->Arg(4)->Arg(16);

void BM_SimulateShots(benchmark::State& state) {
  CanonicalParams p;
  p.l0 = p.l4 = 1 / std::sqrt(2.0);
  const PureState3 ghz = PureState3::from_canonical(p);
  const Eigen::Matrix3d id = Eigen::Matrix3d::Identity();
  const int shots = static_cast<int>(state.range(0));
  std::uint64_t s = 0;
  for (auto _ : state)
    benchmark::DoNotOptimize(
        simulate_shots(ghz, Pair::AB, id, id, {}, shots, s++));
}
BENCHMARK(BM_SimulateShots)->Arg(1000)->Arg(100000);

}  // namespace

BENCHMARK_MAIN();
