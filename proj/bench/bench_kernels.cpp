// Serial reference kernels against their OpenMP counterparts on synthetic
// spectra: records x lines.

#include <benchmark/benchmark.h>

#include <random>

#include "thinter/localizer.hpp"

namespace {

using namespace thinter;

std::vector<ExecutionRecord> make_records(int count, int lines) {
  std::mt19937 rng(1);
  std::vector<ExecutionRecord> out(count);
  for (int i = 0; i < count; ++i) {
    out[i].case_id = i;
    out[i].verdict = rng() % 4 == 0 ? Verdict::kFail : Verdict::kPass;
    for (LineNo l = 1; l <= lines; ++l)
      if (rng() % 3 != 0) out[i].covered_lines.push_back(l);
  }
  return out;
}

std::vector<LineClassification> make_classes(int lines) {
  std::vector<LineClassification> out(lines);
  for (int i = 0; i < lines; ++i) {
    out[i].line_no = i + 1;
    out[i].labels = i % 5 == 0 ? LabelSet{LineLabel::kControlFlow, LineLabel::kScopeHeader}
                               : LabelSet{LineLabel::kScopeBody, LineLabel::kSimple};
  }
  return out;
}

template <Spectrum (*Kernel)(std::span<const ExecutionRecord>, int)>
void BM_Spectrum(benchmark::State& state) {
  const int records = static_cast<int>(state.range(0));
  const int lines = static_cast<int>(state.range(1));
  const auto data = make_records(records, lines);
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(data, lines));
  state.SetItemsProcessed(state.iterations() * records);
}

template <std::vector<LineScore> (*Kernel)(const Spectrum&, std::span<const LineClassification>,
                                           const ScoringConfig&)>
void BM_Score(benchmark::State& state) {
  const int lines = static_cast<int>(state.range(0));
  const auto spectrum = count_spectrum_serial(make_records(64, lines), lines);
  const auto classes = make_classes(lines);
  const ScoringConfig cfg;
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(spectrum, classes, cfg));
  state.SetItemsProcessed(state.iterations() * lines);
}

}  // namespace

BENCHMARK(BM_Spectrum<count_spectrum_serial>)->Args({200, 100})->Args({5000, 400})->Args({20000, 1000});
BENCHMARK(BM_Spectrum<count_spectrum_parallel>)->Args({200, 100})->Args({5000, 400})->Args({20000, 1000});
BENCHMARK(BM_Score<score_lines_serial>)->Arg(100)->Arg(10000)->Arg(200000);
BENCHMARK(BM_Score<score_lines_parallel>)->Arg(100)->Arg(10000)->Arg(200000);

BENCHMARK_MAIN();
