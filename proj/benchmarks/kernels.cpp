#include <benchmark/benchmark.h>

#include <random>

#include "foamlb/config.hpp"
#include "foamlb/coupler.hpp"
#include "foamlb/labeling.hpp"
#include "foamlb/lattice.hpp"
#include "foamlb/world.hpp"

using namespace foamlb;

namespace {

GridShape square(const benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  return {n, n};
}

Population uniform_population(const GridShape& s, double rho) {
  Population p(s);
  std::vector<double> r(s.cells(), rho);
  std::vector<Vec2> u(s.cells(), Vec2{0.01, -0.02});
  p.set_equilibrium(r, u);
  return p;
}

void set_cells_per_second(benchmark::State& state, const GridShape& s) {
  state.counters["cells/s"] =
      benchmark::Counter(static_cast<double>(s.cells()) * static_cast<double>(state.iterations()),
                         benchmark::Counter::kIsRate);
}

void BM_Collide(benchmark::State& state) {
  const auto s = square(state);
  auto pop = uniform_population(s, 1.0);
  StepDiagnostics diag;
  for (auto _ : state) {
    collide(pop, RelaxationParams{}, CollisionInputs{}, diag);
    benchmark::ClobberMemory();
  }
  set_cells_per_second(state, s);
}
BENCHMARK(BM_Collide)->Arg(128)->Arg(512);

void BM_Stream(benchmark::State& state) {
  const auto s = square(state);
  const NeighborTable table(s, state.range(1) ? BoundaryKind::mirror : BoundaryKind::periodic);
  auto pop = uniform_population(s, 1.0);
  for (auto _ : state) {
    pop.stream(table);
    benchmark::ClobberMemory();
  }
  set_cells_per_second(state, s);
}
BENCHMARK(BM_Stream)->Args({128, 0})->Args({128, 1})->Args({512, 0});

void BM_CoupledUpdate(benchmark::State& state) {
  const auto s = square(state);
  CouplingParams p;
  p.G = -4.5;
  p.G_cross = 1.5;
  PhasePair pair(s, p);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> noise(0.0, 0.05);
  std::vector<double> rm(s.cells()), rg(s.cells());
  for (std::size_t c = 0; c < s.cells(); ++c) {
    const bool gas = (s.x_of(c) / 16 + s.y_of(c) / 16) % 2 == 0;
    rm[c] = (gas ? 0.02 : 2.3) + noise(rng);
    rg[c] = (gas ? 0.5 : 0.01) + noise(rng);
  }
  const std::vector<Vec2> u(s.cells());
  pair.melt.set_equilibrium(rm, u);
  pair.gas.set_equilibrium(rg, u);
  const NeighborTable table(s, BoundaryKind::periodic);
  CoupledFields fields;
  fields.resize(s.cells());
  for (auto _ : state) {
    update_moments(pair, fields);
    coupled_update(pair, table, nullptr, fields);
    benchmark::DoNotOptimize(fields.ueq_melt.data());
  }
  set_cells_per_second(state, s);
}
BENCHMARK(BM_CoupledUpdate)->Arg(128)->Arg(512);

void BM_WorldStep(benchmark::State& state) {
  auto cfg = load_config(std::string(FOAMLB_PRESET_DIR) + "/two_bubble_modified.cfg");
  World w(cfg);
  for (auto _ : state) w.step();
  set_cells_per_second(state, w.phases().shape());
}
BENCHMARK(BM_WorldStep)->Unit(benchmark::kMillisecond);

void BM_Label(benchmark::State& state) {
  const auto s = square(state);
  std::mt19937_64 rng(11);
  std::bernoulli_distribution coin(0.45);
  std::vector<std::uint8_t> mask(s.cells());
  for (auto& m : mask) m = coin(rng) ? 1 : 0;
  for (auto _ : state) benchmark::DoNotOptimize(label_components(mask, s, true));
  set_cells_per_second(state, s);
}
BENCHMARK(BM_Label)->Arg(256)->Arg(750);

}  // namespace

BENCHMARK_MAIN();
