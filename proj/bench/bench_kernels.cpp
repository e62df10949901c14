#include <benchmark/benchmark.h>


#include "selfsim/nucleus.hpp"
#include "selfsim/schreier.hpp"
#include "selfsim/spec_format.hpp"

using namespace selfsim;

namespace {

ActionEngine& engine() {
  static ActionEngine e(build_automaton(load_spec_file(SELFSIM_SOURCE_DIR "/specs/basilica.ss")));
  return e;
}

const std::vector<ClassId>& labels() {
  static const auto l = [] {
    auto& e = engine();
    auto n = std::get<Nucleus>(compute_nucleus(e));
    return default_generating_set(e, &n);
  }();
  return l;
}

void BM_ActionTableParallel(benchmark::State& state) {
  const auto v = level_vertices(engine().graph(), static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(action_table(engine(), labels(), v));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(v.size() * labels().size()));
}

void BM_ActionTableSerial(benchmark::State& state) {
  const auto v = level_vertices(engine().graph(), static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(action_table_serial(engine(), labels(), v));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(v.size() * labels().size()));
}

void BM_LevelTransitiveParallel(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(level_transitive(engine(), static_cast<std::size_t>(state.range(0))));
}

void BM_LevelTransitiveSerial(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(level_transitive_serial(engine(), static_cast<std::size_t>(state.range(0))));
}

}  // namespace

BENCHMARK(BM_ActionTableParallel)->DenseRange(8, 14, 2)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_ActionTableSerial)->DenseRange(8, 14, 2)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_LevelTransitiveParallel)->DenseRange(8, 14, 2)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_LevelTransitiveSerial)->DenseRange(8, 14, 2)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
