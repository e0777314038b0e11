// Serial reference kernels against their OpenMP versions, plus whole runs.
//
//   refinery_kernels_bench --benchmark_filter=Display

#include <benchmark/benchmark.h>

#include <map>
#include <tuple>

#include "refinery/lincr.hpp"
#include "refinery/simgen.hpp"

using namespace refinery;

namespace {

struct Fixture {
  Instance instance;
  std::vector<const Tree*> refs;
  Refined refined;
};

const Fixture& fixture(std::size_t n, std::size_t k) {
  static std::map<std::pair<std::size_t, std::size_t>, Fixture> cache;
  auto it = cache.find({n, k});
  if (it == cache.end()) {
    auto inst = make_instance({n, k, 0.5, 7, 0});
    auto out = lincr_refine(inst.inputs);
    Fixture f{std::move(inst), {}, out.refined()};
    for (const auto& t : f.instance.inputs) f.refs.push_back(&t);
    it = cache.emplace(std::pair{n, k}, std::move(f)).first;
  }
  return it->second;
}

void args(benchmark::internal::Benchmark* b) {
  for (long k : {8, 32})
    for (long n : {1024, 8192}) b->Args({n, k});
}

void BM_TablesSerial(benchmark::State& state) {
  const auto& f = fixture(static_cast<std::size_t>(state.range(0)), static_cast<std::size_t>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(kernels::tree_tables_serial(f.refs));
}
BENCHMARK(BM_TablesSerial)->Apply(args);

void BM_TablesOmp(benchmark::State& state) {
  const auto& f = fixture(static_cast<std::size_t>(state.range(0)), static_cast<std::size_t>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(kernels::tree_tables_omp(f.refs));
}
BENCHMARK(BM_TablesOmp)->Apply(args)->UseRealTime();

void BM_DisplaySerial(benchmark::State& state) {
  const auto& f = fixture(static_cast<std::size_t>(state.range(0)), static_cast<std::size_t>(state.range(1)));
  for (auto _ : state)
    benchmark::DoNotOptimize(kernels::first_undisplayed_serial(f.refined.tree, f.refs, f.refined.correspondences));
}
BENCHMARK(BM_DisplaySerial)->Apply(args);

void BM_DisplayOmp(benchmark::State& state) {
  const auto& f = fixture(static_cast<std::size_t>(state.range(0)), static_cast<std::size_t>(state.range(1)));
  for (auto _ : state)
    benchmark::DoNotOptimize(kernels::first_undisplayed_omp(f.refined.tree, f.refs, f.refined.correspondences));
}
BENCHMARK(BM_DisplayOmp)->Apply(args)->UseRealTime();

void BM_Refine(benchmark::State& state, Execution execution) {
  const auto& f = fixture(static_cast<std::size_t>(state.range(0)), static_cast<std::size_t>(state.range(1)));
  LinCROptions options;
  options.execution = execution;
  for (auto _ : state) benchmark::DoNotOptimize(lincr_refine(f.instance.inputs, options));
  state.SetItemsProcessed(state.iterations() * state.range(0) * state.range(1));
}
BENCHMARK_CAPTURE(BM_Refine, serial, Execution::kSerial)->Apply(args);
BENCHMARK_CAPTURE(BM_Refine, omp, Execution::kOpenMP)->Apply(args)->UseRealTime();

}  // namespace

BENCHMARK_MAIN();
