#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "rotorshape/grape.hpp"
#include "rotorshape/molecule.hpp"

namespace {

using namespace rotorshape;

// Forward plus adjoint sweep at the default slice layout.
void BM_GrapeGradient(benchmark::State& state) {
  const int j_max = static_cast<int>(state.range(0));
  const auto ocs = Molecule::preset("OCS");
  const GrapeConfig config;
  const BasisSpec basis(j_max);
  Eigen::VectorXcd target = Eigen::VectorXcd::Zero(j_max + 1);
  target[0] = target[1] = std::sqrt(0.5);
  const GrapeProblem problem(Hamiltonian::of(ocs), RotorState::eigenstate(basis, 0), RotorState(basis, target),
                             ocs.period(), config.slices, config.substeps, config.ramp_fraction);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1e-4, 1e-4);
  std::vector<double> amps(static_cast<std::size_t>(config.slices));
  for (double& a : amps) a = u(rng);
  for (auto _ : state) benchmark::DoNotOptimize(problem.evaluate(amps, true));
}
BENCHMARK(BM_GrapeGradient)->Arg(15)->Arg(30)->Unit(benchmark::kMillisecond);

}  // namespace
