#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "sld/feature_vector.hpp"
#include "sld/random.hpp"

namespace sld {

/// Multivariate normal density with a cached Cholesky factor.
///
/// The covariance is given row-major (d*d values). It must be symmetric to
/// within 1e-12 relative to its largest entry and positive definite; both
/// conditions are checked here so evaluation never fails later.
class GaussianModel {
 public:
  GaussianModel(std::vector<double> mean, std::vector<double> covariance);

  /// Isotropic Gaussian centered at the origin with standard deviation sigma.
  static GaussianModel standard(std::size_t dim, double sigma = 1.0);

  std::size_t dim() const noexcept { return mean_.size(); }
  std::span<const double> mean() const noexcept { return mean_; }
  std::span<const double> covariance() const noexcept { return covariance_; }
  /// Lower-triangular factor L with L * L^T = covariance, row-major.
  std::span<const double> cholesky() const noexcept { return cholesky_; }

  double log_pdf(std::span<const double> x) const;
  void sample_into(Rng& rng, std::span<double> out) const;

 private:
  std::vector<double> mean_;
  std::vector<double> covariance_;
  std::vector<double> cholesky_;
  double log_norm_ = 0.0;
};

/// Finite mixture of Gaussians sharing one dimension.
class MixtureModel {
 public:
  MixtureModel(std::vector<double> weights, std::vector<GaussianModel> components);

  std::size_t dim() const noexcept { return components_.front().dim(); }
  std::span<const double> weights() const noexcept { return weights_; }
  std::span<const GaussianModel> components() const noexcept { return components_; }

  double log_pdf(std::span<const double> x) const;
  void sample_into(Rng& rng, std::span<double> out) const;

 private:
  std::vector<double> weights_;
  std::vector<double> log_weights_;
  std::vector<double> cumulative_;
  std::vector<GaussianModel> components_;
};

/// Product-Gaussian kernel density estimate with per-dimension bandwidths.
class KdeModel {
 public:
  KdeModel(std::vector<FeatureVector> points, std::vector<double> bandwidths);

  std::size_t dim() const noexcept { return bandwidths_.size(); }
  std::size_t size() const noexcept { return count_; }
  std::span<const double> bandwidths() const noexcept { return bandwidths_; }
  /// Training point i as a coordinate span.
  std::span<const double> point(std::size_t i) const noexcept {
    return {points_.data() + i * dim(), dim()};
  }

  double log_pdf(std::span<const double> x) const;
  void sample_into(Rng& rng, std::span<double> out) const;

 private:
  std::vector<double> points_;  // row-major, count_ x dim
  std::vector<double> bandwidths_;
  std::size_t count_ = 0;
  double log_norm_ = 0.0;
};

/// One of the supported density families.
class DensityModel {
 public:
  using Variant = std::variant<GaussianModel, MixtureModel, KdeModel>;

  DensityModel(GaussianModel m) : model_(std::move(m)) {}
  DensityModel(MixtureModel m) : model_(std::move(m)) {}
  DensityModel(KdeModel m) : model_(std::move(m)) {}

  std::size_t dim() const noexcept;
  /// "gaussian", "mixture" or "kde".
  std::string_view kind() const noexcept;
  const Variant& variant() const noexcept { return model_; }

  /// Evaluate without dimension or finiteness checks.
  double log_pdf_unchecked(std::span<const double> x) const;
  void sample_into(Rng& rng, std::span<double> out) const;

 private:
  Variant model_;
};

/// ln p(x). Throws DimensionMismatch.
double log_pdf(const DensityModel& model, const FeatureVector& x);

/// exp(log_pdf). Underflows to 0 far in the tails; compare log_pdf instead.
double pdf(const DensityModel& model, const FeatureVector& x);

/// count i.i.d. draws. Mixtures pick a component by weight first; KDE picks a
/// training point uniformly and adds kernel noise.
std::vector<FeatureVector> sample(const DensityModel& model, Rng& rng, std::size_t count);

struct SilvermanRule {};

/// One value (broadcast to all dimensions) or one value per dimension.
struct FixedBandwidth {
  std::vector<double> values;
};

using BandwidthRule = std::variant<SilvermanRule, FixedBandwidth>;

/// Fit a KDE. Silverman: h_j = 1.06 * stddev_j * m^(-1/5).
/// Throws TooFewPoints (m < 2), DimensionMismatch, ZeroVariance.
KdeModel fit_kde(std::span<const FeatureVector> data, const BandwidthRule& rule = SilvermanRule{});

/// Maximum-likelihood mean and unbiased sample covariance.
GaussianModel fit_gaussian(std::span<const FeatureVector> data);

/// Numerically stable ln(sum(exp(values))); -inf for an empty or all -inf input.
double log_sum_exp(std::span<const double> values);

}  // namespace sld
