#include <benchmark/benchmark.h>

#include "bslb/linalg.hpp"
#include "bslb/model.hpp"
#include "bslb/rng.hpp"

namespace {

void BM_weighted_covariance(benchmark::State& state) {
  const int M = static_cast<int>(state.range(0));
  const int d = static_cast<int>(state.range(1));
  bslb::Rng rng(42);
  bslb::ArmSet arms(bslb::gen_sphere_arms(M, d, 1.0, rng));
  const Eigen::VectorXd w = Eigen::VectorXd::Constant(M, 1.0 / M);
  for (auto _ : state) {
    auto cov = bslb::weighted_covariance(arms, w);
    benchmark::DoNotOptimize(cov.matrix.data());
  }
}
BENCHMARK(BM_weighted_covariance)->Args({500, 100})->Args({2000, 200});

void BM_min_eigpair(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  bslb::Rng rng(42);
  bslb::ArmSet arms(bslb::gen_sphere_arms(4 * d, d, 1.0, rng));
  const auto cov = bslb::weighted_covariance(arms, Eigen::VectorXd::Constant(4 * d, 0.25 / d));
  for (auto _ : state) {
    auto pair = bslb::min_eigpair(cov.matrix);
    benchmark::DoNotOptimize(pair.value);
  }
}
BENCHMARK(BM_min_eigpair)->Arg(100)->Arg(200);

void BM_project_capped_simplex(benchmark::State& state) {
  const int M = static_cast<int>(state.range(0));
  bslb::Rng rng(7);
  Eigen::VectorXd v(M);
  for (int i = 0; i < M; ++i) v[i] = rng.normal();
  for (auto _ : state) {
    auto mu = bslb::project_capped_simplex(v, 4.0 / M);
    benchmark::DoNotOptimize(mu.data());
  }
}
BENCHMARK(BM_project_capped_simplex)->Arg(500)->Arg(5000);

}  // namespace
