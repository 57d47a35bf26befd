#include <benchmark/benchmark.h>

#include <numbers>

#include "deph/models.hpp"
#include "deph/qmat.hpp"
#include "deph/witness.hpp"

using namespace deph;

static void BM_HermitianEig(benchmark::State& state) {
  const Index d = state.range(0);
  Rng rng(1);
  const ComplexMatrix u = qmat::haar_random_unitary(d, rng);
  const ComplexMatrix h = u * u.diagonal().real().asDiagonal() * u.adjoint();
  for (auto _ : state) benchmark::DoNotOptimize(qmat::hermitian_eig(h));
}
BENCHMARK(BM_HermitianEig)->Arg(4)->Arg(16)->Arg(64);

static void BM_QaTrappedIon(benchmark::State& state) {
  const auto phi = dephasing::dephasing_matrix(models::trapped_ion_channel(std::numbers::pi / 8));
  witness::EoAOptions opts;
  opts.restarts = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(witness::q_a(phi, opts).q_a);
}
BENCHMARK(BM_QaTrappedIon)->Arg(1)->Arg(16)->Unit(benchmark::kMillisecond);

static void BM_QaGravity(benchmark::State& state) {
  const models::GravityParams p = models::gravity_params({});
  const auto phi = models::gravity_phi(p, p.t_star());
  for (auto _ : state) benchmark::DoNotOptimize(witness::q_a(phi).q_a);
}
BENCHMARK(BM_QaGravity)->Unit(benchmark::kMillisecond);

static void BM_ScanSample(benchmark::State& state) {
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(models::scan(state.range(0), 1, RngSeed{seed++}));
}
BENCHMARK(BM_ScanSample)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

static void BM_ExperimentCircuit(benchmark::State& state) {
  const models::Circuit c = models::experiment_circuit(0.7);
  for (auto _ : state) benchmark::DoNotOptimize(models::circuit_unitary(c));
}
BENCHMARK(BM_ExperimentCircuit);

static void BM_Tomography(benchmark::State& state) {
  const ComplexVector v = ComplexVector::Constant(4, 0.5);
  const ComplexMatrix rho = v * v.adjoint();
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(models::simulate_tomography(rho, 300, RngSeed{seed++}));
}
BENCHMARK(BM_Tomography);
BENCHMARK_MAIN();
