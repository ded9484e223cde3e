#include <benchmark/benchmark.h>

#include "bslb/design.hpp"
#include "bslb/model.hpp"
#include "bslb/rng.hpp"

namespace {

void BM_solve_relaxation(benchmark::State& state) {
  const int M = static_cast<int>(state.range(0));
  const int d = static_cast<int>(state.range(1));
  bslb::Rng rng(3);
  bslb::ArmSet arms(bslb::gen_hard_arms(M, d, 5, 0.5, rng));
  bslb::RelaxationOptions opt;
  opt.max_iters = static_cast<int>(state.range(2));
  for (auto _ : state) {
    auto sol = bslb::solve_relaxation(arms, 2 * d, opt);
    benchmark::DoNotOptimize(sol.objective);
  }
}
BENCHMARK(BM_solve_relaxation)
    ->Args({500, 100, 50})
    ->Args({2000, 200, 50})
    ->Unit(benchmark::kMillisecond);

void BM_randomized_round(benchmark::State& state) {
  const int M = static_cast<int>(state.range(0));
  const int d = static_cast<int>(state.range(1));
  bslb::Rng rng(3);
  bslb::ArmSet arms(bslb::gen_hard_arms(M, d, 5, 0.5, rng));
  const auto sol = bslb::solve_relaxation(arms, 2 * d, bslb::RelaxationOptions{60, 0.0, 0.0});
  for (auto _ : state) {
    auto design = bslb::randomized_round(arms, sol, rng);
    benchmark::DoNotOptimize(design.lambda_hat);
  }
}
BENCHMARK(BM_randomized_round)->Args({500, 100})->Unit(benchmark::kMillisecond);

}  // namespace
