#include "bayesfuse/fusion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace bayesfuse::fusion {

namespace {

constexpr double kSimplexTol = 1e-12;
constexpr std::size_t kLogSpaceThreshold = 16;

}  // namespace

PriorVector::PriorVector(std::vector<double> thetas) : thetas_(std::move(thetas)) {
  if (thetas_.empty()) {
    throw InvalidArgument("PriorVector must be nonempty");
  }
  double sum = 0.0;
  for (double t : thetas_) {
    if (!(t >= 0.0 && t <= 1.0)) {
      throw InvalidArgument("prior out of [0,1]: " + std::to_string(t));
    }
    sum += t;
  }
  if (std::abs(sum - 1.0) > kSimplexTol) {
    throw InvalidArgument("priors must sum to 1 within 1e-12, got " +
                          std::to_string(sum));
  }
}

PosteriorMatrix::PosteriorMatrix(std::size_t l, std::size_t k,
                                 std::vector<double> alphas)
    : l_(l), k_(k), alphas_(std::move(alphas)) {
  if (l_ == 0 || k_ == 0 || alphas_.size() != l_ * k_) {
    throw InvalidArgument("PosteriorMatrix shape mismatch");
  }
  for (double a : alphas_) {
    if (!(a >= 0.0 && a <= 1.0)) {
      throw InvalidArgument("posterior out of [0,1]: " + std::to_string(a));
    }
  }
  for (std::size_t j = 0; j < k_; ++j) {
    double col = 0.0;
    for (std::size_t i = 0; i < l_; ++i) col += at(i, j);
    if (std::abs(col - 1.0) > kSimplexTol) {
      throw InvalidArgument("posterior column " + std::to_string(j + 1) +
                            " must sum to 1 within 1e-12, got " +
                            std::to_string(col));
    }
  }
}

std::string_view combiner_name(CombinerId id) {
  switch (id) {
    case CombinerId::naive: return "naive";
    case CombinerId::no_prior_product: return "no_prior_product";
    case CombinerId::linear_pool: return "linear_pool";
    case CombinerId::log_pool: return "log_pool";
    case CombinerId::first_only: return "first_only";
    case CombinerId::second_only: return "second_only";
  }
  throw UnknownCombiner("invalid combiner id");
}

CombinerId combiner_from_name(std::string_view name) {
  for (CombinerId id : kAllCombiners) {
    if (combiner_name(id) == name) return id;
  }
  throw UnknownCombiner("unknown combiner: " + std::string(name));
}

UnitProb naive_fuse_two(UnitProb alpha, UnitProb beta, UnitProb theta) {
  const double a = alpha.value();
  const double b = beta.value();
  const double t = theta.value();
  if (t == 0.0 || t == 1.0) {
    throw DegeneratePrior("naive_fuse_two requires 0 < theta < 1");
  }
  const double num = a * b / t;
  const double den = num + (1.0 - a) * (1.0 - b) / (1.0 - t);
  if (den == 0.0) {
    throw IndeterminateFusion(
        "naive_fuse_two is 0/0 at (alpha,beta) = (" + std::to_string(a) +
        "," + std::to_string(b) + ")");
  }
  return UnitProb(num / den);
}

std::vector<double> naive_fuse_multi_all(const PosteriorMatrix& posteriors,
                                         const PriorVector& priors) {
  const std::size_t l = posteriors.classes();
  const std::size_t k = posteriors.features();
  if (priors.size() != l) {
    throw InvalidArgument("priors size does not match posterior classes");
  }
  for (std::size_t i = 0; i < l; ++i) {
    if (priors.at(i) == 0.0) {
      throw DegeneratePrior("class prior " + std::to_string(i + 1) +
                            " is zero");
    }
  }

  std::vector<double> scores(l, 0.0);
  if (k < kLogSpaceThreshold) {
    for (std::size_t i = 0; i < l; ++i) {
      double prod = 1.0;
      for (std::size_t j = 0; j < k; ++j) prod *= posteriors.at(i, j);
      double score = prod;
      for (std::size_t r = 1; r < k; ++r) score /= priors.at(i);
      scores[i] = score;
    }
    double total = std::accumulate(scores.begin(), scores.end(), 0.0);
    if (total == 0.0) {
      throw IndeterminateFusion("all class scores are zero");
    }
    for (double& s : scores) s /= total;
    return scores;
  }

  // Log-space path: prod_j alpha_ij underflows for large K.
  constexpr double kNegInf = -std::numeric_limits<double>::infinity();
  std::vector<double> logs(l, 0.0);
  double max_log = kNegInf;
  for (std::size_t i = 0; i < l; ++i) {
    double ls = -(static_cast<double>(k) - 1.0) * std::log(priors.at(i));
    for (std::size_t j = 0; j < k; ++j) {
      const double a = posteriors.at(i, j);
      ls += (a == 0.0) ? kNegInf : std::log(a);
    }
    logs[i] = ls;
    max_log = std::max(max_log, ls);
  }
  if (max_log == kNegInf) {
    throw IndeterminateFusion("all class scores are zero");
  }
  double total = 0.0;
  for (std::size_t i = 0; i < l; ++i) {
    scores[i] = std::exp(logs[i] - max_log);
    total += scores[i];
  }
  for (double& s : scores) s /= total;
  return scores;
}

UnitProb naive_fuse_multi(const PosteriorMatrix& posteriors,
                          const PriorVector& priors,
                          std::size_t target_class) {
  if (target_class >= posteriors.classes()) {
    throw InvalidArgument("target class index out of range");
  }
  return UnitProb(naive_fuse_multi_all(posteriors, priors)[target_class]);
}

UnitProb model_posterior(UnitProb alpha, UnitProb beta, UnitProb theta,
                         double j_val, double jbar_val) {
  const double a = alpha.value();
  const double b = beta.value();
  const double t = theta.value();
  if (t == 0.0 || t == 1.0) {
    throw DegeneratePrior("model_posterior requires 0 < theta < 1");
  }
  if (!(j_val >= 0.0) || !(jbar_val >= 0.0)) {
    throw InvalidArgument("correlation values must be nonnegative");
  }
  const double num = j_val * a * b / t;
  const double den = num + jbar_val * (1.0 - a) * (1.0 - b) / (1.0 - t);
  if (den == 0.0) {
    throw IndeterminateFusion("model_posterior is 0/0: both terms vanish");
  }
  return UnitProb(num / den);
}

Combiner baseline_combiner(CombinerId id) {
  switch (id) {
    case CombinerId::naive:
      return [](UnitProb a, UnitProb b, UnitProb t) {
        return naive_fuse_two(a, b, t);
      };
    case CombinerId::no_prior_product:
      return [](UnitProb a, UnitProb b, UnitProb) {
        const double num = a.value() * b.value();
        const double den = num + (1.0 - a.value()) * (1.0 - b.value());
        if (den == 0.0) {
          throw IndeterminateFusion("no_prior_product is 0/0");
        }
        return UnitProb(num / den);
      };
    case CombinerId::linear_pool:
      return [](UnitProb a, UnitProb b, UnitProb) {
        return UnitProb((a.value() + b.value()) / 2.0);
      };
    case CombinerId::log_pool:
      return [](UnitProb a, UnitProb b, UnitProb) {
        const double num = std::sqrt(a.value() * b.value());
        const double den =
            num + std::sqrt((1.0 - a.value()) * (1.0 - b.value()));
        if (den == 0.0) {
          throw IndeterminateFusion("log_pool is 0/0");
        }
        return UnitProb(num / den);
      };
    case CombinerId::first_only:
      return [](UnitProb a, UnitProb, UnitProb) { return a; };
    case CombinerId::second_only:
      return [](UnitProb, UnitProb b, UnitProb) { return b; };
  }
  throw UnknownCombiner("invalid combiner id");
}

}  // namespace bayesfuse::fusion
