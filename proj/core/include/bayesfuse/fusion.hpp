#pragma once

/// Closed-form combination rules for per-feature posterior probabilities.
///
/// Two classifiers report alpha = P(A=1 | x1) and beta = P(A=1 | x2) for a
/// binary class with prior theta = P(A=1). Under conditional independence of
/// the features given the class, the exact joint posterior is
///
///     gamma(alpha, beta, theta) =
///         (alpha*beta/theta) /
///         (alpha*beta/theta + (1-alpha)*(1-beta)/(1-theta))
///
/// and this is the rule `naive_fuse_two` implements. `naive_fuse_multi`
/// generalizes it to L classes and K features. `model_posterior` gives the
/// exact posterior when the correlation model (J, Jbar) is known; J = Jbar = 1
/// recovers the naive rule. A fixed set of baseline combiners is provided as
/// the experimental control group for the verification harness.

#include <array>
#include <cstddef>
#include <functional>
#include <string_view>
#include <vector>

#include "bayesfuse/types.hpp"

namespace bayesfuse::fusion {

/// Class priors theta_i: each in [0,1], summing to 1 within 1e-12.
class PriorVector {
 public:
  explicit PriorVector(std::vector<double> thetas);

  std::size_t size() const { return thetas_.size(); }
  double at(std::size_t i) const { return thetas_.at(i); }
  const std::vector<double>& thetas() const { return thetas_; }

 private:
  std::vector<double> thetas_;
};

/// Per-feature posteriors alphas[i][j] = P(A=i | X_j = x_j), stored row-major
/// as an L x K matrix. Every entry lies in [0,1] and every column sums to 1
/// over the classes within 1e-12.
class PosteriorMatrix {
 public:
  PosteriorMatrix(std::size_t l, std::size_t k, std::vector<double> alphas);

  std::size_t classes() const { return l_; }
  std::size_t features() const { return k_; }
  double at(std::size_t i, std::size_t j) const { return alphas_[i * k_ + j]; }

 private:
  std::size_t l_;
  std::size_t k_;
  std::vector<double> alphas_;
};

enum class CombinerId {
  naive,
  no_prior_product,
  linear_pool,
  log_pool,
  first_only,
  second_only,
};

constexpr std::array<CombinerId, 6> kAllCombiners = {
    CombinerId::naive,      CombinerId::no_prior_product,
    CombinerId::linear_pool, CombinerId::log_pool,
    CombinerId::first_only, CombinerId::second_only,
};

std::string_view combiner_name(CombinerId id);

/// Inverse of combiner_name; throws UnknownCombiner for anything else.
CombinerId combiner_from_name(std::string_view name);

/// Naive-Bayes fusion of two classifier outputs under prior theta.
///
/// Throws DegeneratePrior for theta in {0,1} (the rule divides by both theta
/// and 1-theta) and IndeterminateFusion for the 0/0 inputs (alpha,beta) =
/// (1,0) or (0,1), which the rule does not define.
UnitProb naive_fuse_two(UnitProb alpha, UnitProb beta, UnitProb theta);

/// Naive-Bayes fusion for L classes and K features: the posterior of class
/// `target_class` (0-based) given all K per-feature posteriors.
///
/// Score of class i is prod_j alphas[i][j] / theta_i^(K-1); the result is the
/// target's share of the total score. Products are evaluated in log space
/// once K >= 16 to avoid underflow; smaller cases use direct products so that
/// small fixtures are bit-exact.
UnitProb naive_fuse_multi(const PosteriorMatrix& posteriors,
                          const PriorVector& priors, std::size_t target_class);

/// The full L-vector of naive_fuse_multi outputs; entries sum to 1.
std::vector<double> naive_fuse_multi_all(const PosteriorMatrix& posteriors,
                                         const PriorVector& priors);

/// Exact posterior under a known correlation model evaluated at one point:
/// (J*alpha*beta/theta) / (J*alpha*beta/theta + Jbar*(1-alpha)*(1-beta)/(1-theta)).
/// With j_val = jbar_val = 1 this equals naive_fuse_two.
UnitProb model_posterior(UnitProb alpha, UnitProb beta, UnitProb theta,
                         double j_val, double jbar_val);

using Combiner = std::function<UnitProb(UnitProb, UnitProb, UnitProb)>;

/// Returns the named combination rule. The set is fixed: it is the control
/// group for the verification harness, not an extension point.
Combiner baseline_combiner(CombinerId id);

}  // namespace bayesfuse::fusion
