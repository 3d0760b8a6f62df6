#include <benchmark/benchmark.h>

#include "pidec/decompose.hpp"
#include "pidec/normalize.hpp"
#include "pidec/parser.hpp"

namespace {

using namespace pidec;

std::vector<Process> random_terms(unsigned size, int count, std::uint64_t seed = 1) {
  RandomTermOptions o;
  o.names = {Name::user("a"), Name::user("b"), Name::user("c")};
  o.max_size = size;
  RandomTermGenerator gen(seed, o);
  std::vector<Process> out;
  for (int i = 0; i < count; ++i) out.push_back(gen.next());
  return out;
}

void BM_Parse(benchmark::State& state) {
  const std::string text = "new z.(a!z.z!c.c!a.0) | a?(x).x?(y).y!b.0 | (tau.a!b.0 + c?(w).w!w.0)";
  for (auto _ : state) benchmark::DoNotOptimize(parse(text));
}
BENCHMARK(BM_Parse);

void BM_BuildLts(benchmark::State& state) {
  auto terms = random_terms(static_cast<unsigned>(state.range(0)), 64);
  std::size_t i = 0;
  for (auto _ : state) {
    const Process& p = terms[i++ % terms.size()];
    benchmark::DoNotOptimize(build_lts(p, NameUniverse::covering({p})));
  }
}
BENCHMARK(BM_BuildLts)->Arg(8)->Arg(12)->Arg(16)->Arg(20);

void BM_Bisim(benchmark::State& state) {
  Mode mode = state.range(1) == 0 ? Mode::Strong : Mode::Weak;
  auto terms = random_terms(static_cast<unsigned>(state.range(0)), 64);
  std::size_t i = 0;
  for (auto _ : state) {
    const Process& p = terms[i % terms.size()];
    Process q = alpha_canonical(expand_hnf(p).to_process());
    benchmark::DoNotOptimize(bisim(p, q, mode).equivalent);
    ++i;
  }
}
BENCHMARK(BM_Bisim)->Args({12, 0})->Args({12, 1})->Args({18, 0})->Args({18, 1});

void BM_NaiveOracle(benchmark::State& state) {
  auto terms = random_terms(12, 64);
  std::size_t i = 0;
  for (auto _ : state) {
    const Process& p = terms[i++ % terms.size()];
    benchmark::DoNotOptimize(naive_bisim_oracle(p, p, Mode::Weak));
  }
}
BENCHMARK(BM_NaiveOracle);

void BM_Decompose(benchmark::State& state) {
  Mode mode = state.range(0) == 0 ? Mode::Strong : Mode::Weak;
  auto terms = random_terms(14, 64, 7);
  std::size_t i = 0;
  for (auto _ : state) {
    const Process& p = terms[i++ % terms.size()];
    benchmark::DoNotOptimize(decomposition(p, mode, NameUniverse::covering({p}, InputMode::FreshOnly)));
  }
}
BENCHMARK(BM_Decompose)->Arg(0)->Arg(1);

void BM_StutterFree(benchmark::State& state) {
  auto terms = random_terms(14, 64, 9);
  std::size_t i = 0;
  for (auto _ : state) {
    const Process& p = terms[i++ % terms.size()];
    benchmark::DoNotOptimize(normalize_stuttering(p, NameUniverse::covering({p}, InputMode::FreshOnly)));
  }
}
BENCHMARK(BM_StutterFree);

void BM_Sweep(benchmark::State& state) {
  TermUniverse tu{{Name::user("a"), Name::user("b")}, static_cast<unsigned>(state.range(0)), true, false};
  for (auto _ : state) benchmark::DoNotOptimize(sweep_upd(tu, Mode::Strong, InputMode::Early).violation_count);
}
BENCHMARK(BM_Sweep)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
