#include "polar/classifier.hpp"
#include "polar/orders.hpp"
#include "polar/verifier.hpp"

#include <benchmark/benchmark.h>

using namespace polar;

namespace {

SpacePtr square(std::size_t n) { return make_grid({n, n}); }

Belief skewed(const SpacePtr& space, bool up) {
  std::vector<Rational> w;
  for (std::size_t s = 0; s < space->size(); ++s) w.emplace_back(up ? long(s + 1) : long(space->size() - s));
  return Belief::from_weights(space, std::move(w));
}

}  // namespace

static void BM_EnumerateUpperSets(benchmark::State& state) {
  const auto space = square(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_events(space, UpperFamilyKind::UpperSet));
}
BENCHMARK(BM_EnumerateUpperSets)->Arg(2)->Arg(3)->Arg(4);

static void BM_Compare(benchmark::State& state) {
  const auto space = square(3);
  const EventFamily family(space, static_cast<UpperFamilyKind>(state.range(0)));
  const Belief low = skewed(space, false), high = skewed(space, true);
  for (auto _ : state) benchmark::DoNotOptimize(compare(low, high, family));
}
BENCHMARK(BM_Compare)->Arg(0)->Arg(1)->Arg(2);

static void BM_Update(benchmark::State& state) {
  const auto space = square(static_cast<std::size_t>(state.range(0)));
  const Belief prior = skewed(space, true);
  std::vector<Rational> values;
  for (std::size_t s = 0; s < space->size(); ++s) values.push_back(ratio(long(s % 3 + 1), 3));
  const LikelihoodFn ell(space, values);
  for (auto _ : state) benchmark::DoNotOptimize(update(prior, ell));
}
BENCHMARK(BM_Update)->Arg(2)->Arg(4)->Arg(8);

static void BM_ClassifyAll3x3(benchmark::State& state) {
  const auto space = square(3);
  for (auto _ : state) {
    for (unsigned m = 1; m + 1 < (1u << space->size()); ++m) {
      std::vector<bool> mask(space->size());
      for (std::size_t s = 0; s < space->size(); ++s) mask[s] = (m >> s) & 1u;
      benchmark::DoNotOptimize(classify(StateSubset::from_mask(space, mask)));
    }
  }
}
BENCHMARK(BM_ClassifyAll3x3)->Unit(benchmark::kMillisecond);

static void BM_RandomSweep(benchmark::State& state) {
  SweepConfig c;
  c.space = make_grid({2, 3});
  c.kind = UpperFamilyKind::UpperSet;
  c.trials = 1000;
  for (auto _ : state) benchmark::DoNotOptimize(sweep(c));
}
BENCHMARK(BM_RandomSweep)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
