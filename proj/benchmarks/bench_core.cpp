#include <benchmark/benchmark.h>

#include <numbers>

#include "catlab/analysis.hpp"
#include "catlab/fock.hpp"
#include "catlab/model.hpp"
#include "catlab/propagators.hpp"
#include "catlab/protocol.hpp"

using namespace catlab;

namespace {

model::ModelParams params() { return model::params_new(2.0, 0.1, 0.0).first; }

void BM_UnitaryFromGenerator(benchmark::State& state) {
  const int dim = static_cast<int>(state.range(0));
  SpaceConfig cfg(dim, 0);
  auto [a, ad] = fock::ladder_operators(cfg);
  const Mat q = a + ad;
  for (auto _ : state) {
    auto u = fock::unitary_from_generator(q, -1.0);
    benchmark::DoNotOptimize(u);
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_UnitaryFromGenerator)->RangeMultiplier(2)->Range(32, 512)->Complexity();

void BM_UPaper(benchmark::State& state) {
  const int dim = static_cast<int>(state.range(0));
  SpaceConfig cfg(dim, 0);
  const auto p = params();
  for (auto _ : state) {
    auto u = prop::u_paper(p, std::numbers::pi / 2, cfg);
    benchmark::DoNotOptimize(u);
  }
}
BENCHMARK(BM_UPaper)->Arg(64)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

void BM_UExact(benchmark::State& state) {
  const int dim = static_cast<int>(state.range(0));
  SpaceConfig cfg(dim, 0);
  const auto p = params();
  for (auto _ : state) {
    auto u = prop::u_exact(p, std::numbers::pi / 2, cfg);
    benchmark::DoNotOptimize(u);
  }
}
BENCHMARK(BM_UExact)->Arg(64)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

void BM_RunProtocol(benchmark::State& state) {
  const int dim = static_cast<int>(state.range(0));
  SpaceConfig cfg(dim, 0);
  const auto p = params();
  for (auto _ : state) {
    auto out = protocol::run_protocol(p, std::numbers::pi / 2,
                                      protocol::Variant::V,
                                      protocol::Engine::Paper, cfg);
    benchmark::DoNotOptimize(out);
  }
}
BENCHMARK(BM_RunProtocol)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_PositionDensity(benchmark::State& state) {
  const int dim = static_cast<int>(state.range(0));
  SpaceConfig cfg(dim, 0);
  const auto st = fock::coherent_state(2.0, cfg);
  const Eigen::VectorXd grid = analysis::default_grid(2.0);
  for (auto _ : state) {
    auto prof = analysis::position_density(st, grid);
    benchmark::DoNotOptimize(prof);
  }
}
BENCHMARK(BM_PositionDensity)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);

void BM_WignerRow(benchmark::State& state) {
  const int dim = static_cast<int>(state.range(0));
  SpaceConfig cfg(dim, 0);
  const auto st = fock::coherent_state(1.0, cfg);
  const Eigen::VectorXd xs = Eigen::VectorXd::LinSpaced(64, -4.0, 4.0);
  const Eigen::VectorXd p0 = Eigen::VectorXd::LinSpaced(1, 0.0, 0.0);
  for (auto _ : state) {
    auto w = analysis::wigner_map(st, xs, p0);
    benchmark::DoNotOptimize(w);
  }
}
BENCHMARK(BM_WignerRow)->Arg(48)->Arg(96)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
