#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "sld/density_models.hpp"
#include "sld/feature_vector.hpp"

namespace sld {

/// Probability mass allowed outside the prediction region, in [0, 1].
class SignificanceLevel {
 public:
  explicit SignificanceLevel(double alpha);
  double value() const noexcept { return alpha_; }

 private:
  double alpha_;
};

/// Density level-set threshold, held in log-density units. A point lies in
/// the prediction region iff log p(x) >= log_theta. log_theta = -inf is the
/// "reject nothing" threshold theta = 0.
struct Threshold {
  double log_theta;

  double theta() const noexcept;
};

/// Worst-case root-mean-square error target for the CDF estimate, in (0, 0.5].
class RmseBudget {
 public:
  explicit RmseBudget(double rmse);
  double value() const noexcept { return rmse_; }

 private:
  double rmse_;
};

/// Smallest n whose worst-case RMSE 1/sqrt(4n) does not exceed the budget.
std::size_t required_sample_count(RmseBudget budget);

/// sqrt(F (1 - F) / n): RMSE of the empirical CDF at a point with true CDF F.
double theoretical_rmse(double cdf_value, std::size_t n);

/// 1 / sqrt(4 n), the maximum of theoretical_rmse over F.
double worst_case_rmse(std::size_t n);

enum class Verdict { Inlier, Outlier };

struct Classification {
  Verdict verdict;
  double z;  ///< significance level of the point
};

/// Monte Carlo estimate of the CDF of the density value Y = p(X).
///
/// Holds the ascending log-densities of n draws from the model. The empirical
/// CDF counts entries <= the query (ties count as below), so evaluation is one
/// binary search. Immutable once built; safe to share between threads.
class SldEstimator {
 public:
  /// Validates that entries are finite, ascending and nonempty.
  SldEstimator(std::shared_ptr<const DensityModel> model, std::vector<double> sorted_log_densities,
               std::uint64_t seed);

  std::size_t size() const noexcept { return sorted_.size(); }
  std::uint64_t seed() const noexcept { return seed_; }
  std::span<const double> sorted_log_densities() const noexcept { return sorted_; }
  const DensityModel& model() const noexcept { return *model_; }
  const std::shared_ptr<const DensityModel>& model_ptr() const noexcept { return model_; }

  /// Number of stored entries <= log_y.
  std::size_t count_at_or_below(double log_y) const;

 private:
  std::shared_ptr<const DensityModel> model_;
  std::vector<double> sorted_;
  std::uint64_t seed_;
};

/// Draw n samples with Rng(seed), map them through log_pdf and sort.
/// Throws NumericError if any log-density is non-finite.
SldEstimator build_estimator(std::shared_ptr<const DensityModel> model, std::size_t n,
                             std::uint64_t seed);

/// Fraction of stored entries <= log_y. NaN queries throw NonFiniteInput.
double empirical_cdf(const SldEstimator& est, double log_y);

/// z = F~(log p(x)): estimated mass of all outcomes less likely than x.
double significance_level_of(const SldEstimator& est, const FeatureVector& x);

/// k = ceil(alpha * n); k = 0 gives theta = 0, otherwise the k-th smallest entry.
Threshold threshold_for(const SldEstimator& est, SignificanceLevel alpha);

/// Outlier iff z < alpha.
Classification classify(const SldEstimator& est, const FeatureVector& x, SignificanceLevel alpha);

/// log p(x) >= log_theta.
bool in_prediction_region(const DensityModel& model, Threshold threshold, const FeatureVector& x);

}  // namespace sld
