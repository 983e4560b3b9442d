// Serial reference against the OpenMP kernels. Thread count is the second
// range argument; 1 runs the serial path.

#include <benchmark/benchmark.h>

#include <omp.h>

#include <random>
#include <set>
#include <vector>

#include "crystinv/fiber.hpp"
#include "crystinv/group.hpp"
#include "crystinv/solver.hpp"

using namespace crystinv;

namespace {

/// Z_N^2 with Lambda = 4Z_N^2 and the C4 rotations.
CrystalModel square_model(int n) {
  return CrystalModel({n, 2}, {{4, 0}, {0, 4}}, {{1, 0, 0, 1}, {0, -1, 1, 0}, {-1, 0, 0, -1}, {0, 1, -1, 0}});
}

std::vector<Signal> random_data(std::size_t size, std::size_t m, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  std::vector<Signal> out(m, Signal{CVector(size)});
  for (auto& s : out)
    for (auto& x : s.values) x = cplx(normal(rng), normal(rng));
  return out;
}

void BM_ReferenceDft(benchmark::State& state) {
  Ambient amb({static_cast<int>(state.range(0)), 2});
  const auto f = random_data(amb.size(), 1, 1).front();
  for (auto _ : state) benchmark::DoNotOptimize(reference::dft(amb, f));
}

void BM_Dft(benchmark::State& state) {
  Ambient amb({static_cast<int>(state.range(0)), 2});
  const auto f = random_data(amb.size(), 1, 1).front();
  const Exec exec{static_cast<int>(state.range(1))};
  for (auto _ : state) benchmark::DoNotOptimize(dft(amb, f, exec));
}

void BM_PreGramianField(benchmark::State& state) {
  const auto model = square_model(static_cast<int>(state.range(0)));
  const auto data = random_data(model.ambient().size(), 4, 2);
  const auto hats = transform_family(model.ambient(), data);
  const Exec exec{static_cast<int>(state.range(1))};
  for (auto _ : state) benchmark::DoNotOptimize(pre_gramian_field(model, hats, exec));
}

void BM_Solve(benchmark::State& state) {
  const auto model = square_model(static_cast<int>(state.range(0)));
  const auto data = random_data(model.ambient().size(), 4, 3);
  SolveOptions opts;
  opts.exec.jobs = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(solve_optimal(model, data, 2, opts));
}

void thread_grid(benchmark::internal::Benchmark* b) {
  std::set<int> jobs{1, 2, 4, omp_get_max_threads()};
  for (int n : {16, 32, 64})
    for (int j : jobs) b->Args({n, j});
}

}  // namespace

BENCHMARK(BM_ReferenceDft)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Dft)->Apply(thread_grid)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PreGramianField)->Apply(thread_grid)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Solve)->Apply(thread_grid)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
