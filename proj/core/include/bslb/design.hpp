#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "bslb/linalg.hpp"
#include "bslb/model.hpp"
#include "bslb/rng.hpp"

namespace bslb {

// Solution of the capped-simplex relaxation
//   max_mu lambda_min(A^T diag(mu) A)  s.t.  sum mu = 1, mu_i <= 1 / u_hat.
struct RelaxationSolution {
  Eigen::VectorXd mu;
  int u_hat = 0;
  double objective = 0.0;
};

enum class DesignProvenance { rounded, brute_force };

// Exploration subset with its achieved minimum eigenvalue of the
// size-normalized second-moment matrix.
struct Design {
  std::vector<int> subset;
  double lambda_hat = 0.0;
  DesignProvenance provenance = DesignProvenance::rounded;
};

struct RelaxationOptions {
  int max_iters = 400;
  double tol = 0.0;     // early stop when the iterate moves less than this
  double eta0 = 0.0;    // 0: use 1 / max_j |a_j|^2
};

// lambda_min of |subset|^{-1} sum_{j in subset} a_j a_j^T.
double subset_min_eigenvalue(const ArmSet& arms, const std::vector<int>& subset);

// Projected supergradient ascent on the concave relaxation; returns the best
// iterate seen, which is never worse than the uniform start.
RelaxationSolution solve_relaxation(const ArmSet& arms, int u_hat,
                                    const RelaxationOptions& opt = {});

// Independent inclusion of arm j with probability min(u_hat * mu_j, 1).
// Retries an empty draw up to 100 times, then throws "rounding degenerate".
Design randomized_round(const ArmSet& arms, const RelaxationSolution& sol, Rng& rng);

struct SubsetSearchOptions {
  std::uint64_t enumeration_cap = 2'000'000;
};

// Exhaustive maximization of the normalized minimum eigenvalue over all
// subsets with size in [size_lo, size_hi]; lexicographically first winner.
// Throws "search too large" past the enumeration cap.
Design subset_search(const ArmSet& arms, int size_lo, int size_hi,
                     const SubsetSearchOptions& opt = {});

struct GoodSubsetOptions {
  int rounding_repeats = 10;
  bool enable_search = false;
  RelaxationOptions relaxation;
  SubsetSearchOptions search;
};

// Full subset-selection step: relaxation once, best of several roundings,
// optionally also the exhaustive search over sizes [d, u_hat].
Design get_good_subset(const ArmSet& arms, int u_hat, const GoodSubsetOptions& opt, Rng& rng);

// Same, reusing a relaxation solution already computed for this arm set.
Design get_good_subset(const ArmSet& arms, const RelaxationSolution& sol,
                       const GoodSubsetOptions& opt, Rng& rng);

enum class UHatMode { quality, linear_time };

// Cap parameter schedule: ceil(c_u * d / lambda_lower^{2/3}) for the quality
// mode, ceil(c_u * d / lambda_lower^2) for the linear-time mode.
int choose_u_hat(int d, double lambda_lower, UHatMode mode, double c_u = 1.0);

std::string design_to_json(const Design& design);
Design design_from_json(const std::string& text);

}  // namespace bslb
