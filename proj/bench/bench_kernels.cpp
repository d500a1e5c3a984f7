#include <benchmark/benchmark.h>

#include "corpus.hpp"
#include "tensegrity/chow.hpp"
#include "tensegrity/fanbuild.hpp"

using namespace tensegrity;

namespace {

const std::vector<Fan>& corpus_fans() {
  static const std::vector<Fan> fans = [] {
    std::vector<Fan> out;
    for (const auto& fw : corpus::random_planar(60, 8)) out.push_back(build_fan(fw));
    return out;
  }();
  return fans;
}

// Larger frameworks make the per-wall work worth spreading across threads.
const std::vector<Fan>& large_fans() {
  static const std::vector<Fan> fans = [] {
    std::vector<Fan> out;
    for (const auto& fw : corpus::random_planar(8, 40, 99)) out.push_back(build_fan(fw));
    return out;
  }();
  return fans;
}

const Fan& example_fan() {
  static const Fan fan = build_fan(corpus::example_a());
  return fan;
}

template <IntersectionTable (*Kernel)(const Fan&)>
void table_on(benchmark::State& state, const std::vector<Fan>& fans) {
  for (auto _ : state)
    for (const auto& fan : fans) benchmark::DoNotOptimize(Kernel(fan));
  state.SetItemsProcessed(state.iterations() * fans.size());
}

template <CompletenessResult (*Kernel)(const Fan&, const std::vector<IntVector>&)>
void completeness_on(benchmark::State& state, const std::vector<Fan>& fans) {
  auto dirs = sample_directions(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state)
    for (const auto& fan : fans) benchmark::DoNotOptimize(Kernel(fan, dirs));
  state.SetItemsProcessed(state.iterations() * fans.size() * dirs.size());
}

void BM_TableSerial_Example(benchmark::State& s) { table_on<intersection_table_serial>(s, {example_fan()}); }
void BM_TableOmp_Example(benchmark::State& s) { table_on<intersection_table>(s, {example_fan()}); }
void BM_TableSerial_Corpus(benchmark::State& s) { table_on<intersection_table_serial>(s, corpus_fans()); }
void BM_TableOmp_Corpus(benchmark::State& s) { table_on<intersection_table>(s, corpus_fans()); }
void BM_TableSerial_Large(benchmark::State& s) { table_on<intersection_table_serial>(s, large_fans()); }
void BM_TableOmp_Large(benchmark::State& s) { table_on<intersection_table>(s, large_fans()); }

void BM_CompletenessSerial_Example(benchmark::State& s) {
  completeness_on<sample_completeness_serial>(s, {example_fan()});
}
void BM_CompletenessOmp_Example(benchmark::State& s) { completeness_on<sample_completeness>(s, {example_fan()}); }
void BM_CompletenessSerial_Corpus(benchmark::State& s) {
  completeness_on<sample_completeness_serial>(s, corpus_fans());
}
void BM_CompletenessOmp_Corpus(benchmark::State& s) { completeness_on<sample_completeness>(s, corpus_fans()); }

}  // namespace

BENCHMARK(BM_TableSerial_Example);
BENCHMARK(BM_TableOmp_Example);
BENCHMARK(BM_TableSerial_Corpus)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TableOmp_Corpus)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TableSerial_Large)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_TableOmp_Large)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_CompletenessSerial_Example)->Arg(1000)->Arg(10000)->UseRealTime();
BENCHMARK(BM_CompletenessOmp_Example)->Arg(1000)->Arg(10000)->UseRealTime();
BENCHMARK(BM_CompletenessSerial_Corpus)->Arg(1000)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_CompletenessOmp_Corpus)->Arg(1000)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
