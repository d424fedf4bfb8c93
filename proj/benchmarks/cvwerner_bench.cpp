#include <benchmark/benchmark.h>

#include "cvwerner/discord.hpp"
#include "cvwerner/linalg.hpp"
#include "cvwerner/separability.hpp"
#include "cvwerner/werner.hpp"

namespace {

using namespace cvwerner;

void BM_DOperatorClosedForm(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(build_d_operator(0.5, n, DOperatorPath::ClosedForm));
}
BENCHMARK(BM_DOperatorClosedForm)->Arg(4)->Arg(16)->Arg(64);

void BM_DOperatorEnumerated(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(build_d_operator(0.5, n, DOperatorPath::Enumerated));
}
BENCHMARK(BM_DOperatorEnumerated)->DenseRange(3, 6);

void BM_DecomposeGeneral(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const WernerParams w{0.5, 0.5, 0.5 * ppt_threshold(0.5, 0.5, n), n};
  for (auto _ : state) benchmark::DoNotOptimize(decompose_general_ppt(w));
}
BENCHMARK(BM_DecomposeGeneral)->DenseRange(3, 6);

void BM_BlockedEigenvalues(benchmark::State& state) {
  const auto rho = build_rho_q_pt_cutoff(0.6, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(eigenvalues_hermitian(rho));
}
BENCHMARK(BM_BlockedEigenvalues)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);

void BM_TraceNormConvergence(benchmark::State& state) {
  const int cutoff = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(trace_norm_convergence(0.5, 5, cutoff));
}
BENCHMARK(BM_TraceNormConvergence)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);

void BM_PovmDiscord(benchmark::State& state) {
  const int cutoff = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(povm_discord(0.4, 30, cutoff, cutoff));
}
BENCHMARK(BM_PovmDiscord)->Arg(100)->Arg(500)->Unit(benchmark::kMillisecond);

void BM_PhotonCountingNumeric(benchmark::State& state) {
  const auto rho = build_rho_q_pt_cutoff(0.5, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(photon_counting_discord_numeric(rho));
}
BENCHMARK(BM_PhotonCountingNumeric)->Arg(100)->Arg(300)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
