#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "rotorshape/molecule.hpp"
#include "rotorshape/propagator.hpp"
#include "rotorshape/spline_field.hpp"

namespace {

using namespace rotorshape;

// One rotational period of a random spline field at Tr/20000.
void BM_PropagatePeriod(benchmark::State& state) {
  const int j_max = static_cast<int>(state.range(0));
  const auto ocs = Molecule::preset("OCS");
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-5e-4, 5e-4);
  std::vector<double> interior(28);
  for (double& v : interior) v = u(rng);
  const auto field = SplineField::from_interior(ocs.period(), interior);
  const auto psi = RotorState::eigenstate(BasisSpec(j_max), 0);
  const double dt = ocs.period() / kDefaultStepsPerPeriod;
  for (auto _ : state) {
    benchmark::DoNotOptimize(propagate(psi, field, Hamiltonian::of(ocs), 0.0, ocs.period(), dt));
  }
  state.SetItemsProcessed(state.iterations() * kDefaultStepsPerPeriod);
}
BENCHMARK(BM_PropagatePeriod)->Arg(9)->Arg(20)->Arg(40)->Unit(benchmark::kMillisecond);

void BM_FreeEvolve(benchmark::State& state) {
  const auto ocs = Molecule::preset("OCS");
  const auto psi = RotorState::eigenstate(BasisSpec(20), 3);
  double tau = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(free_evolve(psi, ocs.rotational_constant(), tau));
    tau += 1.0;
  }
}
BENCHMARK(BM_FreeEvolve);

}  // namespace

BENCHMARK_MAIN();
