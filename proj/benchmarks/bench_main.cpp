#include <benchmark/benchmark.h>

#include <random>

#include "qcd/coset_enum.hpp"
#include "qcd/fixtures.hpp"
#include "qcd/fsa.hpp"
#include "qcd/pair_fsa.hpp"
#include "qcd/rational_detector.hpp"

using namespace qcd;

namespace {

// Random NFA over k letters; fan-out 0, 1 or 2 per letter.
Fsa random_nfa(std::mt19937& rng, std::size_t k, std::size_t n) {
  std::vector<std::string> syms;
  for (std::size_t i = 0; i < k; ++i) syms.push_back(std::string(1, static_cast<char>('a' + i)));
  Fsa m(syms, n);
  m.add_initial(0);
  for (std::size_t s = 0; s < n; ++s) {
    if (rng() % 3 == 0) m.set_accepting(static_cast<State>(s));
    for (std::size_t x = 0; x < k; ++x) {
      const unsigned fan = rng() % 4;
      for (unsigned e = 0; e < (fan == 3 ? 2u : fan == 0 ? 0u : 1u); ++e) {
        m.add_transition(static_cast<State>(s), static_cast<Letter>(x), static_cast<State>(rng() % n));
      }
    }
  }
  return m;
}

void BM_Minimize(benchmark::State& state) {
  std::mt19937 rng(1);
  const Fsa m = random_nfa(rng, 2, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(minimize(m));
}
BENCHMARK(BM_Minimize)->Arg(8)->Arg(12)->Arg(16);

void BM_ComposeMultipliers(benchmark::State& state) {
  const auto s = shortlex_free(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(compose(s.multiplier(0), s.multiplier(1)));
}
BENCHMARK(BM_ComposeMultipliers)->Arg(1)->Arg(2)->Arg(3);

void BM_ComposeZ2(benchmark::State& state) {
  const auto s = shortlex_free_abelian();
  for (auto _ : state) benchmark::DoNotOptimize(compose(s.multiplier(0), s.multiplier(2)));
}
BENCHMARK(BM_ComposeZ2);

void BM_CosetEnumeration(benchmark::State& state) {
  const auto f = make_fixture("free:2");
  const auto h = SubgroupSpec::make(f.structure.alphabet, {{0, 0}, {2, 0, 3}});
  const auto stages = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    CosetEnumerator e(f.presentation, h);
    for (std::size_t i = 0; i < stages; ++i) benchmark::DoNotOptimize(e.next());
  }
}
BENCHMARK(BM_CosetEnumeration)->Arg(2)->Arg(4)->Arg(6);

void BM_DetectRationalFree(benchmark::State& state) {
  const auto f = make_fixture("free:2");
  const auto h = SubgroupSpec::make(f.structure.alphabet, {{0, 2, 1}, {2, 2}});
  for (auto _ : state) benchmark::DoNotOptimize(detect_rational(f.structure, f.presentation, h, {}));
}
BENCHMARK(BM_DetectRationalFree);

void BM_DetectRationalS3(benchmark::State& state) {
  const auto f = make_fixture("s3");
  const auto h = SubgroupSpec::make(f.structure.alphabet, {{0}});
  for (auto _ : state) benchmark::DoNotOptimize(detect_rational(f.structure, f.presentation, h, {}));
}
BENCHMARK(BM_DetectRationalS3);

void BM_DetectRationalZ2Exhausted(benchmark::State& state) {
  const auto f = make_fixture("zz");
  const auto h = SubgroupSpec::make(f.structure.alphabet, {{0, 2}});
  DetectionBudget b;
  b.max_stage = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(detect_rational(f.structure, f.presentation, h, b));
}
BENCHMARK(BM_DetectRationalZ2Exhausted)->Arg(5)->Arg(10);

}  // namespace
BENCHMARK_MAIN();
