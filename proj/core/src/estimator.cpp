#include "sld/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "sld/error.hpp"
#include "sld/random.hpp"

namespace sld {
namespace {

// ceil(x) that ignores a relative excess of 1e-12, so 0.07 * 100 -> 7, not 8.
std::size_t ceil_with_slack(double x) {
  const double snapped = std::ceil(x - 1e-12 * std::max(1.0, std::abs(x)));
  return static_cast<std::size_t>(std::max(0.0, snapped));
}

}  // namespace

SignificanceLevel::SignificanceLevel(double alpha) : alpha_(alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw DataError("significance level must lie in [0, 1], got " + std::to_string(alpha));
  }
}

double Threshold::theta() const noexcept { return std::exp(log_theta); }

RmseBudget::RmseBudget(double rmse) : rmse_(rmse) {
  if (!(rmse > 0.0 && rmse <= 0.5)) {
    throw DataError("rmse budget must lie in (0, 0.5], got " + std::to_string(rmse));
  }
}

std::size_t required_sample_count(RmseBudget budget) {
  const double r = budget.value();
  return std::max<std::size_t>(1, ceil_with_slack(1.0 / (4.0 * r * r)));
}

double theoretical_rmse(double cdf_value, std::size_t n) {
  return std::sqrt(cdf_value * (1.0 - cdf_value) / static_cast<double>(n));
}

double worst_case_rmse(std::size_t n) { return 1.0 / std::sqrt(4.0 * static_cast<double>(n)); }

SldEstimator::SldEstimator(std::shared_ptr<const DensityModel> model,
                           std::vector<double> sorted_log_densities, std::uint64_t seed)
    : model_(std::move(model)), sorted_(std::move(sorted_log_densities)), seed_(seed) {
  if (!model_) throw InvalidModel("estimator requires a density model");
  if (sorted_.empty()) throw DataError("estimator needs at least one entry");
  for (std::size_t i = 0; i < sorted_.size(); ++i) {
    if (!std::isfinite(sorted_[i])) {
      throw NonFiniteInput("estimator entry " + std::to_string(i) + " is not finite");
    }
    if (i > 0 && sorted_[i] < sorted_[i - 1]) {
      throw DataError("estimator entries are not sorted at index " + std::to_string(i));
    }
  }
}

std::size_t SldEstimator::count_at_or_below(double log_y) const {
  if (std::isnan(log_y)) throw NonFiniteInput("log-density query is NaN");
  return static_cast<std::size_t>(std::upper_bound(sorted_.begin(), sorted_.end(), log_y) -
                                  sorted_.begin());
}

SldEstimator build_estimator(std::shared_ptr<const DensityModel> model, std::size_t n,
                             std::uint64_t seed) {
  if (!model) throw InvalidModel("estimator requires a density model");
  if (n == 0) throw DataError("sample count must be at least 1");
  Rng rng(seed);
  std::vector<double> values(n);
  std::vector<double> point(model->dim());
  for (std::size_t i = 0; i < n; ++i) {
    model->sample_into(rng, point);
    values[i] = model->log_pdf_unchecked(point);
    if (!std::isfinite(values[i])) {
      throw NumericError("non-finite log-density for sample " + std::to_string(i));
    }
  }
  std::sort(values.begin(), values.end());
  return SldEstimator(std::move(model), std::move(values), seed);
}

double empirical_cdf(const SldEstimator& est, double log_y) {
  return static_cast<double>(est.count_at_or_below(log_y)) / static_cast<double>(est.size());
}

double significance_level_of(const SldEstimator& est, const FeatureVector& x) {
  return empirical_cdf(est, log_pdf(est.model(), x));
}

Threshold threshold_for(const SldEstimator& est, SignificanceLevel alpha) {
  const std::size_t n = est.size();
  const std::size_t k = std::min(n, ceil_with_slack(alpha.value() * static_cast<double>(n)));
  if (k == 0) return Threshold{-std::numeric_limits<double>::infinity()};
  return Threshold{est.sorted_log_densities()[k - 1]};
}

Classification classify(const SldEstimator& est, const FeatureVector& x, SignificanceLevel alpha) {
  const double z = significance_level_of(est, x);
  return {z < alpha.value() ? Verdict::Outlier : Verdict::Inlier, z};
}

bool in_prediction_region(const DensityModel& model, Threshold threshold, const FeatureVector& x) {
  return log_pdf(model, x) >= threshold.log_theta;
}

}  // namespace sld
