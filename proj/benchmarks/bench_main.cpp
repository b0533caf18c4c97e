#include <random>

#include <benchmark/benchmark.h>

#include "covercraft/gh_tools.hpp"
#include "covercraft/integer_matrix.hpp"
#include "covercraft/models.hpp"
#include "covercraft/monodromy.hpp"
#include "covercraft/stable_lattice.hpp"

using namespace covercraft;

namespace {

void BM_SmithNormalForm(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<int> d(-9, 9);
  std::vector<std::vector<std::int64_t>> rows(n, std::vector<std::int64_t>(n));
  for (auto& r : rows)
    for (auto& x : r) x = d(rng);
  const auto A = IntMatrix::from_rows(rows, n);
  for (auto _ : state) benchmark::DoNotOptimize(smith_normal_form(A));
}
BENCHMARK(BM_SmithNormalForm)->Arg(8)->Arg(16)->Arg(32);

void BM_BallExpansion(benchmark::State& state) {
  const auto m = models::honeycomb();
  const Rational r(static_cast<long>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(derived_ball(m.action.graph(), m.basepoint, r));
}
BENCHMARK(BM_BallExpansion)->Arg(8)->Arg(32)->Arg(64);

void BM_GammaTilde(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  MonodromyInput in;
  const auto m = models::rose(n);
  in.action = m.action;
  in.basepoint = m.basepoint;
  in.radius = Rational(1, 2);
  in.S = l1_ball(n, 1);
  in.M = 2;
  const MonodromyProblem pr(in);
  for (auto _ : state) benchmark::DoNotOptimize(build_gamma_tilde(pr));
}
BENCHMARK(BM_GammaTilde)->Arg(1)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_GromovHausdorff(benchmark::State& state) {
  const auto k = static_cast<std::size_t>(state.range(0));
  const auto a = models::subdivided_line(k);
  const auto b = models::subdivided_line(k + 1);
  const auto A = quotient_space(a.action, {{1}}, a.basepoint).space;
  const auto B = quotient_space(b.action, {{1}}, b.basepoint).space;
  for (auto _ : state) benchmark::DoNotOptimize(gh_distance_exact(A, B));
}
BENCHMARK(BM_GromovHausdorff)->Arg(3)->Arg(5)->Arg(6)->Unit(benchmark::kMillisecond);

void BM_JohnTransform(benchmark::State& state) {
  const auto nm = NormModel::analytic(NormKind::kL1, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(john_transform(nm, 256, 1e-6, 1));
}
BENCHMARK(BM_JohnTransform)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
