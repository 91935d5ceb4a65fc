// Serial vs OpenMP Caputo history accumulation, and a full fd_solve with each.

#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "fracdiff/oracle.hpp"

namespace {

using namespace fracdiff::oracle;

struct History {
  std::vector<double> rows, w, out;
  std::size_t count, n;

  History(std::size_t count_, std::size_t n_) : rows(count_ * n_), w(count_), out(n_), count(count_), n(n_) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (double& r : rows) r = u(rng);
    for (double& x : w) x = u(rng);
  }
};

template <void (*Kernel)(const double*, const double*, std::size_t, std::size_t, double*)>
void BM_history(benchmark::State& state) {
  History h(static_cast<std::size_t>(state.range(0)), static_cast<std::size_t>(state.range(1)));
  for (auto _ : state) {
    Kernel(h.rows.data(), h.w.data(), h.count, h.n, h.out.data());
    benchmark::DoNotOptimize(h.out.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0) * state.range(1));
}

void history_args(benchmark::internal::Benchmark* b) {
  for (int count : {250, 1000, 4000}) {
    for (int n : {513, 2049}) b->Args({count, n});
  }
}

void BM_fd_solve(benchmark::State& state) {
  OracleConfig cfg;
  cfg.parallel = state.range(0) != 0;
  cfg.dt = 2e-3;
  const auto p = DiffusionParams::case2(0.5, 0.3, 0.0);
  for (auto _ : state) {
    const auto d = fd_solve(p, InitialCondition::delta(), cfg, 1.0);
    benchmark::DoNotOptimize(d.values.data());
  }
}

}  // namespace

BENCHMARK(BM_history<history_sum_serial>)->Name("history_sum/serial")->Apply(history_args);
BENCHMARK(BM_history<history_sum_parallel>)->Name("history_sum/parallel")->Apply(history_args);
BENCHMARK(BM_fd_solve)->Name("fd_solve/case2")->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
