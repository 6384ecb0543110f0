#include <benchmark/benchmark.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include "fairdiv/bivalued.hpp"
#include "fairdiv/builtins.hpp"
#include "fairdiv/lottery.hpp"
#include "fairdiv/ps.hpp"
#include "fairdiv/transforms.hpp"

namespace {

using fairdiv::Divisibility;
using fairdiv::ItemKind;
using fairdiv::Profile;
using fairdiv::Rational;

Profile random_profile(ItemKind kind, std::size_t n, std::size_t m, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> num(0, 9), den(1, 6);
  std::vector<std::vector<Rational>> rows(n, std::vector<Rational>(m));
  for (auto& row : rows) {
    for (auto& v : row) v = Rational(num(rng), den(rng));
  }
  return Profile(kind, Divisibility::kDivisible, std::move(rows));
}

Profile random_bivalued(std::size_t n, std::size_t m, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(0.5);
  std::vector<std::vector<Rational>> rows(n, std::vector<Rational>(m));
  for (auto& row : rows) {
    for (auto& v : row) v = coin(rng) ? Rational(3) : Rational(1);
  }
  return Profile(ItemKind::kChores, Divisibility::kDivisible, std::move(rows));
}

fairdiv::RationalMatrix random_doubly_stochastic(std::size_t size, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  fairdiv::RationalMatrix m(size, size);
  std::vector<std::size_t> perm(size);
  const std::size_t terms = 2 * size;
  for (std::size_t t = 0; t < terms; ++t) {
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    for (std::size_t r = 0; r < size; ++r) m.at(r, perm[r]) += Rational(1, static_cast<long>(terms));
  }
  return m;
}

void BM_PsRun(benchmark::State& state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  const Profile p = random_profile(ItemKind::kChores, 4, m, 1);
  for (auto _ : state) benchmark::DoNotOptimize(fairdiv::ps_run(p));
}
BENCHMARK(BM_PsRun)->RangeMultiplier(2)->Range(4, 64);

void BM_PsProportional(benchmark::State& state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  const Profile p = random_bivalued(4, m, 2);
  for (auto _ : state) benchmark::DoNotOptimize(fairdiv::ps_run(p, fairdiv::TieBreak::kProportionalSplit));
}
BENCHMARK(BM_PsProportional)->RangeMultiplier(2)->Range(4, 32);

void BM_Waterfill(benchmark::State& state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  const fairdiv::BiValuedProfile p(random_bivalued(5, m, 3), Rational(3), Rational(1));
  const fairdiv::BiValuedProfile g = p.dual();
  for (auto _ : state) benchmark::DoNotOptimize(fairdiv::mnw_waterfill(g));
}
BENCHMARK(BM_Waterfill)->RangeMultiplier(2)->Range(4, 64);

void BM_BiValuedChores(benchmark::State& state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  const fairdiv::BiValuedProfile p(random_bivalued(5, m, 4), Rational(3), Rational(1));
  for (auto _ : state) benchmark::DoNotOptimize(fairdiv::bivalued_chores_mechanism(p));
}
BENCHMARK(BM_BiValuedChores)->RangeMultiplier(2)->Range(4, 32);

void BM_Birkhoff(benchmark::State& state) {
  const auto m = random_doubly_stochastic(static_cast<std::size_t>(state.range(0)), 5);
  for (auto _ : state) benchmark::DoNotOptimize(fairdiv::birkhoff_decompose(m));
}
BENCHMARK(BM_Birkhoff)->DenseRange(4, 16, 4);

void BM_ImplementLottery(benchmark::State& state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  const Profile c = random_profile(ItemKind::kChores, 3, m, 6);
  const fairdiv::PsResult ps = fairdiv::ps_run(c);
  for (auto _ : state) benchmark::DoNotOptimize(fairdiv::implement_lottery(c, ps.allocation, ps.schedule));
}
BENCHMARK(BM_ImplementLottery)->DenseRange(3, 12, 3);

void BM_Symmetrize(benchmark::State& state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  const fairdiv::FractionalMechanism sym = fairdiv::symmetrize(*fairdiv::builtin_fractional("ps"));
  const Profile p = random_profile(ItemKind::kGoods, 2, m, 7);
  for (auto _ : state) benchmark::DoNotOptimize(sym(p));
}
BENCHMARK(BM_Symmetrize)->DenseRange(2, 6, 2);

}  // namespace

BENCHMARK_MAIN();
