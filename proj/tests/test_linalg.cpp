#include <doctest.h>

#include <cmath>

#include "bslb/linalg.hpp"
#include "bslb/model.hpp"
#include "bslb/rng.hpp"
#include "oracles.hpp"

using namespace bslb;

namespace {

ArmSet random_ball_arms(int M, int d, Rng& rng) {
  Eigen::MatrixXd arms(M, d);
  for (int j = 0; j < M; ++j) {
    Eigen::VectorXd a(d);
    for (int i = 0; i < d; ++i) a[i] = rng.normal();
    a /= a.norm();
    a *= rng.uniform(0.2, 1.0);
    arms.row(j) = a.transpose();
  }
  return ArmSet(arms);
}

Eigen::VectorXd random_capped_point(int M, double cap, Rng& rng) {
  Eigen::VectorXd v(M);
  for (int i = 0; i < M; ++i) v[i] = rng.uniform();
  return project_capped_simplex(v, cap);
}

}  // namespace

TEST_SUITE("linalg") {

TEST_CASE("weighted covariance on simple inputs") {
  const ArmSet basis(Eigen::MatrixXd::Identity(2, 2));
  Eigen::VectorXd half(2);
  half << 0.5, 0.5;
  const auto cov = weighted_covariance(basis, half);
  CHECK((cov.matrix - 0.5 * Eigen::MatrixXd::Identity(2, 2)).norm() == doctest::Approx(0.0));
  CHECK(cov.weight_sum == doctest::Approx(1.0));

  Eigen::MatrixXd single(1, 3);
  single << 0.3, -0.4, 0.5;
  const auto rank1 = weighted_covariance(ArmSet(single), Eigen::VectorXd::Ones(1));
  CHECK((rank1.matrix - single.transpose() * single).cwiseAbs().maxCoeff() ==
        doctest::Approx(0.0));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(rank1.matrix);
  CHECK(es.eigenvalues()[0] == doctest::Approx(0.0));
  CHECK(es.eigenvalues()[1] == doctest::Approx(0.0));
}

TEST_CASE("weighted covariance matches the naive accumulation") {
  Rng rng(31);
  const ArmSet arms = random_ball_arms(5, 4, rng);
  const Eigen::VectorXd w = Eigen::VectorXd::Constant(5, 0.2);
  const auto cov = weighted_covariance(arms, w);
  CHECK((cov.matrix - oracles::naive_weighted_covariance(arms, w)).cwiseAbs().maxCoeff() <=
        1e-12);
  CHECK((cov.matrix - cov.matrix.transpose()).cwiseAbs().maxCoeff() <= 1e-15);
}

TEST_CASE("weighted covariance rejects bad weights") {
  const ArmSet basis(Eigen::MatrixXd::Identity(2, 2));
  Eigen::VectorXd neg(2);
  neg << 0.5, -0.1;
  CHECK_THROWS(weighted_covariance(basis, neg));
  CHECK_THROWS(weighted_covariance(basis, Eigen::VectorXd::Ones(3)));
}

TEST_CASE("min eigpair on diagonal matrices") {
  const auto id3 = min_eigpair(Eigen::MatrixXd::Identity(3, 3));
  CHECK(id3.value == doctest::Approx(1.0));
  CHECK(id3.vector.norm() == doctest::Approx(1.0));

  Eigen::MatrixXd diag = Eigen::Vector3d(3, 1, 2).asDiagonal();
  const auto pair = min_eigpair(diag);
  CHECK(pair.value == doctest::Approx(1.0));
  CHECK(std::abs(pair.vector[1]) == doctest::Approx(1.0));

  Eigen::MatrixXd skew(2, 2);
  skew << 0, 1, -1, 0;
  CHECK_THROWS_WITH(min_eigpair(skew), doctest::Contains("symmetric"));
}

TEST_CASE("min eigpair matches the characteristic-polynomial oracle at d = 4") {
  Rng rng(37);
  for (int trial = 0; trial < 30; ++trial) {
    Eigen::MatrixXd a(4, 4);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) a(i, j) = rng.normal();
    const Eigen::MatrixXd sym = 0.5 * (a + a.transpose());
    const auto pair = min_eigpair(sym);
    CHECK(pair.value == doctest::Approx(oracles::charpoly_min_eigenvalue(sym)).epsilon(1e-8));
    CHECK((sym * pair.vector - pair.value * pair.vector).norm() <= 1e-8 * sym.norm());
  }
}

TEST_CASE("min eigenvalue lower-bounds every Rayleigh quotient") {
  Rng rng(41);
  const ArmSet arms = random_ball_arms(12, 5, rng);
  const auto cov = weighted_covariance(arms, Eigen::VectorXd::Constant(12, 1.0 / 12));
  const auto pair = min_eigpair(cov.matrix);
  for (int i = 0; i < 100; ++i) {
    Eigen::VectorXd z(5);
    for (int j = 0; j < 5; ++j) z[j] = rng.normal();
    z /= z.norm();
    CHECK(pair.value <= z.dot(cov.matrix * z) + 1e-10);
  }
  // unit-ball arms with unit total weight keep the spectrum in [0, 1]
  CHECK(pair.value >= -1e-12);
  CHECK(pair.value <= 1.0 + 1e-12);
}

TEST_CASE("capped simplex projection on worked values") {
  Eigen::VectorXd v(2);
  v << 0.5, 0.5;
  CHECK((project_capped_simplex(v, 1.0) - v).cwiseAbs().maxCoeff() <= 1e-12);

  Eigen::VectorXd spike(3);
  spike << 10, 0, 0;
  const Eigen::VectorXd mu = project_capped_simplex(spike, 0.5);
  CHECK(mu[0] == doctest::Approx(0.5));
  CHECK(mu[1] == doctest::Approx(0.25));
  CHECK(mu[2] == doctest::Approx(0.25));

  const Eigen::VectorXd third = Eigen::VectorXd::Constant(3, 1.0 / 3.0);
  CHECK((project_capped_simplex(third, 1.0 / 3.0) - third).cwiseAbs().maxCoeff() <= 1e-12);

  CHECK_THROWS_WITH(project_capped_simplex(Eigen::VectorXd::Ones(3), 0.2),
                    doctest::Contains("infeasible"));
}

TEST_CASE("capped simplex projection satisfies KKT and is idempotent") {
  Rng rng(43);
  for (int trial = 0; trial < 200; ++trial) {
    const int M = 2 + static_cast<int>(rng.integer(20));
    Eigen::VectorXd v(M);
    for (int i = 0; i < M; ++i) v[i] = 4.0 * rng.normal();
    const double cap = rng.uniform(1.0 / M, 1.0);
    const Eigen::VectorXd mu = project_capped_simplex(v, cap);
    CHECK(oracles::capped_projection_kkt_residual(v, mu, cap) <= 1e-10);
    CHECK((project_capped_simplex(mu, cap) - mu).cwiseAbs().maxCoeff() <= 1e-12);
  }
}

TEST_CASE("capped simplex projection agrees with a grid QP in 3d") {
  Rng rng(47);
  for (int trial = 0; trial < 5; ++trial) {
    Eigen::VectorXd v(3);
    for (int i = 0; i < 3; ++i) v[i] = rng.normal();
    const double cap = rng.uniform(0.4, 1.0);
    const Eigen::VectorXd mu = project_capped_simplex(v, cap);
    const Eigen::VectorXd grid = oracles::grid_qp_3d(v, cap);
    CHECK((mu - grid).cwiseAbs().maxCoeff() <= 1e-4);
  }
}

TEST_CASE("supergradient inequality of the min-eigenvalue map") {
  Rng rng(53);
  for (int set = 0; set < 3; ++set) {
    const int M = 8 + static_cast<int>(rng.integer(8));
    const int d = 3 + static_cast<int>(rng.integer(3));
    const ArmSet arms = random_ball_arms(M, d, rng);
    const double cap = rng.uniform(2.0 / M, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
      const Eigen::VectorXd mu = random_capped_point(M, cap, rng);
      const Eigen::VectorXd mu2 = random_capped_point(M, cap, rng);
      const auto pair = min_eigpair(weighted_covariance(arms, mu).matrix);
      const Eigen::VectorXd g = (arms.matrix() * pair.vector).cwiseAbs2();
      const double lhs = min_eigpair(weighted_covariance(arms, mu2).matrix).value;
      CHECK(lhs <= pair.value + g.dot(mu2 - mu) + 1e-8);
    }
  }
}

}  // TEST_SUITE
