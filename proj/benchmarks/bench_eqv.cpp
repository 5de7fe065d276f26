#include <benchmark/benchmark.h>

#include <random>

#include "eqv/algebra.hpp"
#include "eqv/burnside.hpp"

using namespace eqv;

namespace {

OrbitCategoryPtr category(const std::string& name) { return OrbitCategory::make(named_group(name)); }

const char* kGroups[] = {"C2", "C4", "C2xC2", "S3", "D4"};

void BM_OrbitCategory(benchmark::State& state) {
  const Group g = named_group(kGroups[state.range(0)]);
  for (auto _ : state) benchmark::DoNotOptimize(OrbitCategory::make(g));
  state.SetLabel(kGroups[state.range(0)]);
}
BENCHMARK(BM_OrbitCategory)->DenseRange(0, 4);

void BM_EnumerateIndexing(benchmark::State& state) {
  const auto oc = category(kGroups[state.range(0)]);
  const auto u = std::make_shared<SetUniverse>(oc, std::max(2, oc->group().order()));
  std::size_t n = 0;
  for (auto _ : state) n = enumerate(u, EnumMode::ExactIndexing).size();
  state.SetLabel(std::string(kGroups[state.range(0)]) + " systems=" + std::to_string(n));
}
BENCHMARK(BM_EnumerateIndexing)->DenseRange(0, 3)->Unit(benchmark::kMillisecond);

void BM_EnumerateTruncated(benchmark::State& state) {
  const auto u = std::make_shared<SetUniverse>(category("C2"), static_cast<int>(state.range(0)));
  std::size_t n = 0;
  for (auto _ : state) n = enumerate(u, EnumMode::Truncated).size();
  state.counters["systems"] = static_cast<double>(n);
}
BENCHMARK(BM_EnumerateTruncated)->DenseRange(2, 5)->Unit(benchmark::kMillisecond);

void BM_ComposeSpans(benchmark::State& state) {
  const auto oc = category(kGroups[state.range(0)]);
  std::mt19937 rng(1);
  std::vector<std::pair<Span, Span>> pairs;
  while (pairs.size() < 64) {
    const GSet x = random_gset(*oc, 4, rng), y = random_gset(*oc, 4, rng), z = random_gset(*oc, 4, rng);
    const GSet r1 = random_gset(*oc, 6, rng), r2 = random_gset(*oc, 6, rng);
    auto a = random_equivariant_map(r1, x, rng), b = random_equivariant_map(r1, y, rng);
    auto c = random_equivariant_map(r2, y, rng), d = random_equivariant_map(r2, z, rng);
    if (a && b && c && d) pairs.emplace_back(span_from_maps(*a, *b), span_from_maps(*c, *d));
  }
  std::size_t i = 0;
  for (auto _ : state) {
    const auto& [s, t] = pairs[i++ % pairs.size()];
    benchmark::DoNotOptimize(compose_spans(s, t));
  }
  state.SetLabel(kGroups[state.range(0)]);
}
BENCHMARK(BM_ComposeSpans)->DenseRange(0, 4);

void BM_ValidateNinfty(benchmark::State& state) {
  const auto oc = category("C2");
  const auto u = std::make_shared<SetUniverse>(oc, static_cast<int>(state.range(0)));
  const OperadPtr o = ninfty(complete_system(u));
  for (auto _ : state) benchmark::DoNotOptimize(validate_operad(*o).ok());
}
BENCHMARK(BM_ValidateNinfty)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);

void BM_FreeAlgebra(benchmark::State& state) {
  const auto oc = category("C2");
  const OperadPtr o = comm(oc, static_cast<int>(state.range(0)));
  const CoeffSystem x = constant_system(oc, 2);
  int top = 0;
  for (auto _ : state) top = free_algebra(o, x).size(oc->top());
  state.counters["top_size"] = top;
}
BENCHMARK(BM_FreeAlgebra)->DenseRange(2, 5)->Unit(benchmark::kMillisecond);

void BM_ValidateStrictAlgebra(benchmark::State& state) {
  const auto oc = category("C4");
  const auto u = std::make_shared<SetUniverse>(oc, 4);
  const StrictAlgebra a = terminal_algebra(complete_system(u));
  for (auto _ : state) benchmark::DoNotOptimize(validate_strict_algebra(a).ok());
}
BENCHMARK(BM_ValidateStrictAlgebra)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
