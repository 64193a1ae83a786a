#include <benchmark/benchmark.h>

#include "irccs/equiv.hpp"
#include "irccs/ident.hpp"
#include "irccs/ilts.hpp"
#include "irccs/irlts.hpp"
#include "irccs/suites.hpp"
#include "irccs/syntax.hpp"

using namespace irccs;

namespace {

const char* kFig = "a.(b | c) + ~a.d | ~a.~c | (a.0 /\\ b.0)";

void BM_EnumerateFwd(benchmark::State& st) {
  auto ip = identify(parse_process(kFig));
  for (auto _ : st) benchmark::DoNotOptimize(enumerate_fwd(ip));
}
BENCHMARK(BM_EnumerateFwd);

void BM_Explore(benchmark::State& st) {
  auto root = initial_of(parse_process(kFig));
  for (auto _ : st) {
    Explorer ex;
    benchmark::DoNotOptimize(explore(root, ex, 100000).states.size());
  }
}
BENCHMARK(BM_Explore)->Unit(benchmark::kMillisecond);

void BM_CompatiblePatterns(benchmark::State& st) {
  Nat n = 0;
  for (auto _ : st) {
    IdPattern a{n % 97, 1 + n % 13}, b{n % 89, 1 + n % 7};
    benchmark::DoNotOptimize(compatible_patterns(a, b));
    ++n;
  }
}
BENCHMARK(BM_CompatiblePatterns);

void BM_Bisim(benchmark::State& st) {
  auto r1 = initial_of(parse_process("a.b | c"));
  auto r2 = initial_of(parse_process("c | a.b"));
  auto mode = st.range(0) ? BisimMode::SBF : BisimMode::BF;
  for (auto _ : st) benchmark::DoNotOptimize(bisimilar(r1, r2, mode).holds);
}
BENCHMARK(BM_Bisim)->Arg(0)->Arg(1);

void BM_NormalizeTrace(benchmark::State& st) {
  auto root = initial_of(parse_process("a.b.c | ~a.d | e.f"));
  auto d = random_trace(root, static_cast<std::size_t>(st.range(0)), 7);
  for (auto _ : st) benchmark::DoNotOptimize(normalize_trace(d));
}
BENCHMARK(BM_NormalizeTrace)->Arg(4)->Arg(8)->Arg(12);

}  // namespace

BENCHMARK_MAIN();
