#include <benchmark/benchmark.h>

#include "bslb/lasso.hpp"
#include "bslb/model.hpp"
#include "bslb/rng.hpp"

namespace {

bslb::Regression make_problem(int n, int d, int k, double sigma, std::uint64_t seed) {
  bslb::Rng rng(seed);
  const bslb::Parameter theta = bslb::gen_sparse_theta(d, k, 0.0, rng);
  Eigen::MatrixXd x(n, d);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < d; ++j) x(i, j) = rng.sign();
  Eigen::VectorXd r = x * theta.theta;
  for (int i = 0; i < n; ++i) r[i] += sigma * rng.normal();
  return bslb::Regression(std::move(x), std::move(r));
}

void BM_lasso_fit(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const int d = static_cast<int>(state.range(1));
  const auto reg = make_problem(n, d, 5, 0.5, 11);
  const bslb::LassoConfig cfg{bslb::default_lambda(n, d), 10000, 1e-8};
  for (auto _ : state) {
    auto theta = bslb::lasso_fit(reg, cfg);
    benchmark::DoNotOptimize(theta.data());
  }
}
BENCHMARK(BM_lasso_fit)
    ->Args({200, 200})
    ->Args({3200, 200})
    ->Unit(benchmark::kMillisecond);

}  // namespace
