#include <benchmark/benchmark.h>

#include "skewca/analysis.hpp"
#include "skewca/constructions.hpp"
#include "skewca/engine.hpp"
#include "skewca/rules.hpp"
#include "skewca/text_format.hpp"

using namespace skewca;

namespace {

void BM_HalfLineStep(benchmark::State& state) {
  const auto rule = t_table();
  const auto x = build_cascade_point({{}, static_cast<int>(state.range(0))});
  for (auto _ : state) {
    HalfLine<ProductSymbol> h(x, 0);
    for (int n = 0; n < 1000; ++n) h.step(rule);
    benchmark::DoNotOptimize(h.get(0));
  }
  state.SetItemsProcessed(state.iterations() * 1000);
}
BENCHMARK(BM_HalfLineStep)->Arg(4)->Arg(8);

void BM_BruteForce(benchmark::State& state) {
  const auto rule = t_table();
  const auto x = parse_config<ProductSymbol>("(_)|_0_|(_)@-1");
  const auto depth = state.range(0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(sensitivity_set_bruteforce(x, rule, 1, {0, 1}, depth, depth, 1));
  }
}
BENCHMARK(BM_BruteForce)->Arg(4)->Arg(6);

void BM_PeriodDetection(benchmark::State& state) {
  const auto rule = t1_table();
  const auto block = static_cast<std::int64_t>(1) << state.range(0);
  const auto x = build_block_point(static_cast<int>(state.range(0)), 0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(detect_eventual_period(x, rule, {0, block - 1}, 1 << 20));
  }
}
BENCHMARK(BM_PeriodDetection)->Arg(2)->Arg(4);

void BM_CascadeCertificate(benchmark::State& state) {
  const auto rule = t_table();
  for (auto _ : state) {
    benchmark::DoNotOptimize(search_cascade_certificate({}, static_cast<int>(state.range(0)), 5000, rule));
  }
}
BENCHMARK(BM_CascadeCertificate)->Arg(0)->Arg(1);

}  // namespace

BENCHMARK_MAIN();
