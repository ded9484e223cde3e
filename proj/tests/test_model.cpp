#include <doctest.h>

#include <cmath>

#include "bslb/model.hpp"
#include "bslb/rng.hpp"
#include "oracles.hpp"

using namespace bslb;

namespace {

Eigen::VectorXd vec(std::initializer_list<double> xs) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(xs.size()));
  int i = 0;
  for (double x : xs) v[i++] = x;
  return v;
}

ArmSet basis_arms(int d) { return ArmSet(Eigen::MatrixXd::Identity(d, d)); }

}  // namespace

TEST_SUITE("model") {

TEST_CASE("arm set invariants checked at construction") {
  CHECK_NOTHROW(basis_arms(3));
  Eigen::MatrixXd too_big(1, 2);
  too_big << 1.5, 0.0;
  CHECK_THROWS(ArmSet(too_big));
  Eigen::MatrixXd l2_violation(1, 4);
  l2_violation << 0.9, 0.9, 0.9, 0.9;  // sup norm fine, l2 norm 1.8
  CHECK_THROWS(ArmSet(l2_violation));
  CHECK_THROWS(ArmSet(Eigen::MatrixXd(0, 3)));
}

TEST_CASE("tail ratio on worked values") {
  CHECK(tail_ratio(Parameter(vec({1, 0, 0})), 1) == doctest::Approx(0.0));
  CHECK(tail_ratio(Parameter(vec({2, 1, 1})), 1) == doctest::Approx(1.0));
  CHECK(tail_ratio(Parameter(vec({4, 3, 2, 1})), 2) == doctest::Approx(3.0 / 7.0));
  // ties go to the lower index
  CHECK(tail_ratio(Parameter(vec({1, -1, 1})), 1) == doctest::Approx(2.0));
  CHECK_THROWS_WITH(tail_ratio(Parameter(vec({0, 0, 0})), 2),
                    doctest::Contains("degenerate"));
}

TEST_CASE("tail ratio properties") {
  Rng rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const int d = 2 + static_cast<int>(rng.integer(8));
    Eigen::VectorXd t(d);
    for (int i = 0; i < d; ++i) t[i] = rng.normal();
    const Parameter theta(t);
    CHECK(tail_ratio(theta, d) == doctest::Approx(0.0));
    const int k = 1 + static_cast<int>(rng.integer(d));
    const double c = rng.uniform(0.1, 5.0) * rng.sign();
    CHECK(tail_ratio(Parameter(c * t), k) == doctest::Approx(tail_ratio(theta, k)));
  }
}

TEST_CASE("sparse theta generator hits the target tail") {
  Rng rng(5);
  SUBCASE("exactly sparse") {
    const Parameter theta = gen_sparse_theta(5, 5, 0.0, rng);
    CHECK(tail_ratio(theta, 5) == doctest::Approx(0.0));
  }
  SUBCASE("simulation-scale target") {
    const Parameter theta = gen_sparse_theta(1000, 10, 3.0, rng);
    CHECK(std::abs(tail_ratio(theta, 10) - 3.0) <= 1e-9 * 3.0);
  }
  SUBCASE("small case") {
    const Parameter theta = gen_sparse_theta(4, 2, 0.5, rng);
    CHECK(std::abs(tail_ratio(theta, 2) - 0.5) <= 1e-9);
  }
  SUBCASE("round trip across random targets") {
    for (int trial = 0; trial < 40; ++trial) {
      const int d = 3 + static_cast<int>(rng.integer(40));
      const int k = 1 + static_cast<int>(rng.integer(d - 1));
      const double beta_max = static_cast<double>(d - k) / k;
      const double beta = rng.uniform(0.0, std::min(beta_max, 4.0));
      const Parameter theta = gen_sparse_theta(d, k, beta, rng);
      CHECK(std::abs(tail_ratio(theta, k) - beta) <= 1e-9 * std::max(1.0, beta));
    }
  }
  SUBCASE("errors") {
    CHECK_THROWS_WITH(gen_sparse_theta(3, 3, 0.5, rng), doctest::Contains("no tail"));
    CHECK_THROWS_WITH(gen_sparse_theta(4, 2, 1.5, rng), doctest::Contains("infeasible"));
  }
}

TEST_CASE("hard instance norms") {
  Rng rng(7);
  SUBCASE("two arms") {
    const Instance inst = gen_hard_instance(2, 2, 1, 0.5, rng);
    CHECK(inst.arm_set.matrix().row(0).norm() == doctest::Approx(1.0));
    CHECK(inst.arm_set.matrix().row(1).norm() == doctest::Approx(0.5));
  }
  SUBCASE("benchmark shape") {
    const Instance inst = gen_hard_instance(500, 100, 5, 0.5, rng);
    for (int j = 0; j < 5; ++j)
      CHECK(inst.arm_set.matrix().row(j).norm() == doctest::Approx(1.0));
    for (int j = 5; j < 500; ++j)
      CHECK(inst.arm_set.matrix().row(j).norm() == doctest::Approx(0.5));
    CHECK(inst.theta.theta.norm() == doctest::Approx(1.0));
    int support = 0;
    for (int i = 0; i < inst.dim(); ++i) support += inst.theta.theta[i] != 0.0;
    CHECK(support == 5);
  }
}

TEST_CASE("top_t_value basics and oracle") {
  const Instance two(basis_arms(2), Parameter(vec({2, 1})), 0.0);
  CHECK(top_t_value(two, 1) == doctest::Approx(2.0));
  CHECK(top_t_value(two, 2) == doctest::Approx(3.0));

  Rng rng(19);
  const Instance inst = gen_sim_instance(6, 3, 2, 0.0, 0.0, rng);
  for (int t = 1; t <= 6; ++t)
    CHECK(top_t_value(inst, t) == doctest::Approx(oracles::sorted_top_t(inst, t)));

  // nondecreasing when rewards are nonnegative
  Eigen::MatrixXd arms(4, 2);
  arms << 1, 0, 0.5, 0.1, 0.2, 0, 0.8, 0.3;
  const Instance nonneg(ArmSet(arms), Parameter(vec({1, 0.5})), 0.0);
  double prev = 0.0;
  for (int t = 1; t <= 4; ++t) {
    const double v = top_t_value(nonneg, t);
    CHECK(v >= prev);
    prev = v;
  }
  // full-horizon value is the total reward
  CHECK(top_t_value(nonneg, 4) ==
        doctest::Approx((arms * vec({1, 0.5})).sum()));
}

TEST_CASE("instance json round trip is exact") {
  Rng rng(23);
  const Instance inst = gen_sim_instance(7, 4, 2, 0.25, 0.3, rng);
  const Instance back = instance_from_json(instance_to_json(inst));
  CHECK(back.dim() == inst.dim());
  CHECK(back.num_arms() == inst.num_arms());
  CHECK((back.arm_set.matrix() - inst.arm_set.matrix()).cwiseAbs().maxCoeff() == 0.0);
  CHECK((back.theta.theta - inst.theta.theta).cwiseAbs().maxCoeff() == 0.0);
  CHECK(back.noise_sigma == inst.noise_sigma);
}

}  // TEST_SUITE
