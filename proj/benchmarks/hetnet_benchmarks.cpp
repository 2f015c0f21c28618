#include <random>
#include <sstream>

#include <benchmark/benchmark.h>

#include "hetnet/centrality.hpp"
#include "hetnet/community.hpp"
#include "hetnet/datasets_io.hpp"
#include "hetnet/ranking.hpp"
#include "planted_gml.hpp"

namespace {

using namespace hetnet;

const NModeMatrix& southern_women() {
  static const NModeMatrix m = build_nmode(load_builtin("southern_women"));
  return m;
}

// Teams plus synthesised conferences, roughly football sized per conference.
NModeMatrix planted(std::size_t conferences) {
  std::mt19937_64 rng(42);
  std::istringstream in(testing::planted_gml(rng, conferences, 12, 0.6, 0.03, 3));
  return build_nmode(parse_gml(in));
}

void BM_SpectralRadius(benchmark::State& state) {
  const auto m = planted(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(spectral_radius(m).lambda_max);
  state.SetLabel(std::to_string(m.dimension()) + " nodes");
}
BENCHMARK(BM_SpectralRadius)->Arg(4)->Arg(12)->Arg(32);

void BM_BonacichExact(benchmark::State& state) {
  const auto m = planted(static_cast<std::size_t>(state.range(0)));
  const auto spectrum = spectral_radius(m);
  const double alpha = 0.5 / spectrum.lambda_max;
  for (auto _ : state) benchmark::DoNotOptimize(bonacich_exact(m, {alpha, 1.0}, spectrum).values.data());
  state.SetLabel(std::to_string(m.dimension()) + " nodes");
}
BENCHMARK(BM_BonacichExact)->Arg(4)->Arg(12)->Arg(32);

void BM_BonacichSeries(benchmark::State& state) {
  const auto m = planted(static_cast<std::size_t>(state.range(0)));
  const double alpha = 0.5 / spectral_radius(m).lambda_max;
  for (auto _ : state) benchmark::DoNotOptimize(bonacich_series(m, {alpha, 1.0}, 3).values.data());
  state.SetLabel(std::to_string(m.dimension()) + " nodes");
}
BENCHMARK(BM_BonacichSeries)->Arg(4)->Arg(12)->Arg(32);

void BM_CommunitiesSouthernWomen(benchmark::State& state) {
  const auto& m = southern_women();
  for (auto _ : state) benchmark::DoNotOptimize(detect_communities(m, 0.06).q);
}
BENCHMARK(BM_CommunitiesSouthernWomen);

void BM_CommunitiesPlanted(benchmark::State& state) {
  const auto m = planted(static_cast<std::size_t>(state.range(0)));
  const auto spectrum = spectral_radius(m);
  const double alpha = 0.2 / spectrum.lambda_max;
  for (auto _ : state) benchmark::DoNotOptimize(detect_communities(m, alpha, 1.0, spectrum).q);
  state.SetLabel(std::to_string(m.dimension()) + " nodes");
}
BENCHMARK(BM_CommunitiesPlanted)->Arg(4)->Arg(12)->Unit(benchmark::kMillisecond);

void BM_AlphaSweep(benchmark::State& state) {
  const auto& m = southern_women();
  const std::vector<double> grid{0, 0.02, 0.04, 0.06, 0.08, 0.1, 0.12, 0.14};
  for (auto _ : state) benchmark::DoNotOptimize(alpha_sweep(m, grid).scores.data());
}
BENCHMARK(BM_AlphaSweep);

}  // namespace

BENCHMARK_MAIN();
