#include "bslb/design.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace bslb {

double subset_min_eigenvalue(const ArmSet& arms, const std::vector<int>& subset) {
  if (subset.empty()) throw std::invalid_argument("subset_min_eigenvalue: empty subset");
  const int d = arms.dim();
  Eigen::MatrixXd s = Eigen::MatrixXd::Zero(d, d);
  for (int j : subset) {
    const Eigen::VectorXd a = arms.arm(j);
    s.selfadjointView<Eigen::Lower>().rankUpdate(a);
  }
  s = s.selfadjointView<Eigen::Lower>();
  s /= static_cast<double>(subset.size());
  return min_eigpair(s).value;
}

RelaxationSolution solve_relaxation(const ArmSet& arms, int u_hat,
                                    const RelaxationOptions& opt) {
  const int M = arms.size();
  if (u_hat < 1 || u_hat > M) throw std::invalid_argument("solve_relaxation: infeasible cap");
  const double cap = 1.0 / static_cast<double>(u_hat);
  const Eigen::MatrixXd& a = arms.matrix();

  double eta0 = opt.eta0;
  if (eta0 <= 0.0) {
    const double max_sq = a.rowwise().squaredNorm().maxCoeff();
    eta0 = max_sq > 0.0 ? 1.0 / max_sq : 1.0;
  }

  auto eig_at = [&](const Eigen::VectorXd& mu) {
    return min_eigpair(weighted_covariance(arms, mu).matrix);
  };

  Eigen::VectorXd mu = Eigen::VectorXd::Constant(M, 1.0 / M);
  EigPair pair = eig_at(mu);
  Eigen::VectorXd best_mu = mu;
  double best_obj = pair.value;

  for (int t = 1; t <= opt.max_iters; ++t) {
    // Supergradient of the concave map mu -> lambda_min(A^T diag(mu) A)
    // at the minimizing eigenvector v: g_j = (v . a_j)^2.
    const Eigen::VectorXd g = (a * pair.vector).cwiseAbs2();
    const double eta = eta0 / std::sqrt(static_cast<double>(t));
    Eigen::VectorXd next = project_capped_simplex(mu + eta * g, cap);
    const double moved = (next - mu).lpNorm<Eigen::Infinity>();
    mu = std::move(next);
    pair = eig_at(mu);
    if (pair.value > best_obj) {
      best_obj = pair.value;
      best_mu = mu;
    }
    if (opt.tol > 0.0 && moved < opt.tol) break;
  }
  return RelaxationSolution{std::move(best_mu), u_hat, best_obj};
}

Design randomized_round(const ArmSet& arms, const RelaxationSolution& sol, Rng& rng) {
  const int M = arms.size();
  if (sol.mu.size() != M) throw std::invalid_argument("randomized_round: mu length mismatch");
  const double u = static_cast<double>(sol.u_hat);
  for (int attempt = 0; attempt < 100; ++attempt) {
    std::vector<int> subset;
    for (int j = 0; j < M; ++j) {
      const double p = std::min(u * sol.mu[j], 1.0);
      if (rng.uniform() < p) subset.push_back(j);
    }
    if (subset.empty()) continue;
    const double lam = subset_min_eigenvalue(arms, subset);
    return Design{std::move(subset), lam, DesignProvenance::rounded};
  }
  throw std::runtime_error("randomized_round: rounding degenerate");
}

namespace {

std::uint64_t subset_count(int M, int size_lo, int size_hi, std::uint64_t cap) {
  std::uint64_t total = 0;
  for (int s = size_lo; s <= size_hi; ++s) {
    // binomial(M, s) with overflow guard against the cap
    std::uint64_t c = 1;
    for (int i = 0; i < s; ++i) {
      if (c > cap) return cap + 1;
      c = c * static_cast<std::uint64_t>(M - i) / static_cast<std::uint64_t>(i + 1);
    }
    total += c;
    if (total > cap) return cap + 1;
  }
  return total;
}

}  // namespace

Design subset_search(const ArmSet& arms, int size_lo, int size_hi,
                     const SubsetSearchOptions& opt) {
  const int M = arms.size();
  size_lo = std::max(size_lo, 1);
  size_hi = std::min(size_hi, M);
  if (size_lo > size_hi) throw std::invalid_argument("subset_search: empty size range");
  if (subset_count(M, size_lo, size_hi, opt.enumeration_cap) > opt.enumeration_cap)
    throw std::invalid_argument("subset_search: search too large");

  Design best;
  best.lambda_hat = -1.0;
  best.provenance = DesignProvenance::brute_force;
  std::vector<int> combo;
  for (int s = size_lo; s <= size_hi; ++s) {
    combo.resize(s);
    for (int i = 0; i < s; ++i) combo[i] = i;
    while (true) {
      const double lam = subset_min_eigenvalue(arms, combo);
      if (lam > best.lambda_hat) {
        best.lambda_hat = lam;
        best.subset = combo;
      }
      // next lexicographic combination
      int i = s - 1;
      while (i >= 0 && combo[i] == M - s + i) --i;
      if (i < 0) break;
      ++combo[i];
      for (int j = i + 1; j < s; ++j) combo[j] = combo[j - 1] + 1;
    }
  }
  return best;
}

Design get_good_subset(const ArmSet& arms, const RelaxationSolution& sol,
                       const GoodSubsetOptions& opt, Rng& rng) {
  if (opt.rounding_repeats < 1)
    throw std::invalid_argument("get_good_subset: need at least one rounding");
  Design best = randomized_round(arms, sol, rng);
  for (int rep = 1; rep < opt.rounding_repeats; ++rep) {
    Design cand = randomized_round(arms, sol, rng);
    if (cand.lambda_hat > best.lambda_hat) best = std::move(cand);
  }
  if (opt.enable_search && arms.dim() <= sol.u_hat) {
    const std::uint64_t count =
        subset_count(arms.size(), arms.dim(), std::min(sol.u_hat, arms.size()),
                     opt.search.enumeration_cap);
    if (count <= opt.search.enumeration_cap) {
      Design searched = subset_search(arms, arms.dim(), sol.u_hat, opt.search);
      if (searched.lambda_hat > best.lambda_hat) best = std::move(searched);
    }
  }
  return best;
}

Design get_good_subset(const ArmSet& arms, int u_hat, const GoodSubsetOptions& opt, Rng& rng) {
  return get_good_subset(arms, solve_relaxation(arms, u_hat, opt.relaxation), opt, rng);
}

int choose_u_hat(int d, double lambda_lower, UHatMode mode, double c_u) {
  if (!(lambda_lower > 0.0 && lambda_lower <= 1.0))
    throw std::invalid_argument("choose_u_hat: lambda_lower must be in (0, 1]");
  if (!(c_u > 0.0)) throw std::invalid_argument("choose_u_hat: c_u must be positive");
  const double denom = mode == UHatMode::quality ? std::pow(lambda_lower, 2.0 / 3.0)
                                                 : lambda_lower * lambda_lower;
  return static_cast<int>(std::ceil(c_u * static_cast<double>(d) / denom));
}

std::string design_to_json(const Design& design) {
  nlohmann::json j;
  j["subset"] = design.subset;
  j["lambda_hat"] = design.lambda_hat;
  j["provenance"] = design.provenance == DesignProvenance::rounded ? "rounded" : "brute_force";
  return j.dump();
}

Design design_from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  Design d;
  d.subset = j.at("subset").get<std::vector<int>>();
  d.lambda_hat = j.at("lambda_hat").get<double>();
  const std::string prov = j.at("provenance").get<std::string>();
  if (prov == "rounded") {
    d.provenance = DesignProvenance::rounded;
  } else if (prov == "brute_force") {
    d.provenance = DesignProvenance::brute_force;
  } else {
    throw std::invalid_argument("design_from_json: unknown provenance");
  }
  return d;
}

}  // namespace bslb
