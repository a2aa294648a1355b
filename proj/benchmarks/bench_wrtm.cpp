#include <benchmark/benchmark.h>

#include <string>

#include "wrtm/automaton.hpp"
#include "wrtm/bn.hpp"
#include "wrtm/halting.hpp"
#include "wrtm/machine_io.hpp"
#include "wrtm/regularize.hpp"
#include "wrtm/simulate.hpp"
#include "wrtm/weight.hpp"

using namespace wrtm;

namespace {

// Word of B_n with `blocks` copies of 1^n before the last block.
Word bn_word(const Machine& m, std::uint32_t n, int blocks) {
  std::string s;
  for (int i = 0; i < blocks; ++i) s += std::string(n, '1') + '$';
  s += std::string(n, '1');
  Word w;
  for (char c : s) w.push_back(*m.find_symbol(std::string(1, c)));
  return w;
}

const char* const kMod3 =
    "machine mod3\nstates q0 q1 q2\ninput a b\nwork a b Y\ninitial q0\nfinal q0\n"
    "trans q0 a q1 Y R\ntrans q1 a q2 Y R\ntrans q2 a q0 Y R\n"
    "trans q0 b q0 Y R\ntrans q1 b q1 Y R\ntrans q2 b q2 Y R\n";

void BM_RunBn(benchmark::State& state) {
  const auto n = static_cast<std::uint32_t>(state.range(0));
  const Machine m = gen_bn(n).machine;
  const Word w = bn_word(m, n, 8);
  for (auto _ : state) benchmark::DoNotOptimize(run_wr(m, w));
  state.SetLabel(std::to_string(w.size()) + " symbols");
}
BENCHMARK(BM_RunBn)->DenseRange(1, 6);

void BM_RunLength(benchmark::State& state) {
  const Machine m = gen_bn(2).machine;
  const Word w = bn_word(m, 2, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(run_wr(m, w));
  state.SetComplexityN(static_cast<benchmark::IterationCount>(w.size()));
}
BENCHMARK(BM_RunLength)->RangeMultiplier(2)->Range(4, 256)->Complexity();

void BM_CheckWr(benchmark::State& state) {
  const Machine m = gen_bn(static_cast<std::uint32_t>(state.range(0))).machine;
  for (auto _ : state) benchmark::DoNotOptimize(check_weight_reducing(m));
}
BENCHMARK(BM_CheckWr)->Arg(4)->Arg(16)->Arg(64);

void BM_ToNfa(benchmark::State& state) {
  const Machine m = parse_machine(kMod3);
  for (auto _ : state) benchmark::DoNotOptimize(to_nfa(m));
}
BENCHMARK(BM_ToNfa);

void BM_MinimizeBridge(benchmark::State& state) {
  const Automaton a = to_nfa(end_marked_to_plain(gen_bn(1).machine));
  for (auto _ : state) benchmark::DoNotOptimize(minimize(a));
}
BENCHMARK(BM_MinimizeBridge);

void BM_DecideHalting(benchmark::State& state) {
  const Machine m = make_halting(parse_machine(kMod3));
  for (auto _ : state) benchmark::DoNotOptimize(decide_halting(m));
}
BENCHMARK(BM_DecideHalting);

}  // namespace

BENCHMARK_MAIN();
