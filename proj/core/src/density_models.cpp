#include "sld/density_models.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Cholesky>
#include <Eigen/Core>

#include "sld/error.hpp"

namespace sld {
namespace {

constexpr double kHalfLogTwoPi = 0.91893853320467274178;  // 0.5 * ln(2 pi)

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

void check_finite(std::span<const double> values, const char* what) {
  for (double v : values) {
    if (!std::isfinite(v)) {
      throw InvalidModel(std::string(what) + " contains a non-finite value");
    }
  }
}

}  // namespace

double log_sum_exp(std::span<const double> values) {
  double peak = -std::numeric_limits<double>::infinity();
  for (double v : values) peak = std::max(peak, v);
  if (!std::isfinite(peak)) return peak;
  double sum = 0.0;
  for (double v : values) sum += std::exp(v - peak);
  return peak + std::log(sum);
}

// ---------------------------------------------------------------------------
// GaussianModel

GaussianModel::GaussianModel(std::vector<double> mean, std::vector<double> covariance)
    : mean_(std::move(mean)), covariance_(std::move(covariance)) {
  const std::size_t d = mean_.size();
  if (d == 0) throw InvalidModel("gaussian mean must have at least one entry");
  if (covariance_.size() != d * d) {
    throw InvalidModel("gaussian covariance must be " + std::to_string(d) + "x" +
                       std::to_string(d));
  }
  check_finite(mean_, "gaussian mean");
  check_finite(covariance_, "gaussian covariance");

  double scale = 0.0;
  for (double v : covariance_) scale = std::max(scale, std::abs(v));
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = i + 1; j < d; ++j) {
      double& upper = covariance_[i * d + j];
      double& lower = covariance_[j * d + i];
      if (std::abs(upper - lower) > 1e-12 * scale) {
        throw FactorizationError("gaussian covariance is not symmetric");
      }
      const double avg = 0.5 * (upper + lower);
      upper = avg;
      lower = avg;
    }
  }

  const Eigen::Map<const RowMatrix> cov(covariance_.data(), d, d);
  const Eigen::LLT<RowMatrix> llt(cov);
  if (llt.info() != Eigen::Success) {
    throw FactorizationError("gaussian covariance is not positive definite");
  }
  RowMatrix factor = llt.matrixL();
  cholesky_.assign(factor.data(), factor.data() + d * d);

  double log_det_half = 0.0;
  for (std::size_t i = 0; i < d; ++i) {
    const double pivot = cholesky_[i * d + i];
    if (!(pivot > 0.0)) throw FactorizationError("gaussian covariance has a non-positive pivot");
    log_det_half += std::log(pivot);
  }
  log_norm_ = -static_cast<double>(d) * kHalfLogTwoPi - log_det_half;
}

GaussianModel GaussianModel::standard(std::size_t dim, double sigma) {
  std::vector<double> cov(dim * dim, 0.0);
  for (std::size_t i = 0; i < dim; ++i) cov[i * dim + i] = sigma * sigma;
  return GaussianModel(std::vector<double>(dim, 0.0), std::move(cov));
}

double GaussianModel::log_pdf(std::span<const double> x) const {
  const std::size_t d = dim();
  // Forward substitution L z = x - mean, accumulating |z|^2.
  double z_buf[16];
  std::vector<double> z_heap;
  double* z = z_buf;
  if (d > 16) {
    z_heap.resize(d);
    z = z_heap.data();
  }
  double quad = 0.0;
  for (std::size_t i = 0; i < d; ++i) {
    double acc = x[i] - mean_[i];
    const double* row = cholesky_.data() + i * d;
    for (std::size_t j = 0; j < i; ++j) acc -= row[j] * z[j];
    z[i] = acc / row[i];
    quad += z[i] * z[i];
  }
  return log_norm_ - 0.5 * quad;
}

void GaussianModel::sample_into(Rng& rng, std::span<double> out) const {
  const std::size_t d = dim();
  double z_buf[16];
  std::vector<double> z_heap;
  double* z = z_buf;
  if (d > 16) {
    z_heap.resize(d);
    z = z_heap.data();
  }
  for (std::size_t i = 0; i < d; ++i) z[i] = rng.normal();
  for (std::size_t i = 0; i < d; ++i) {
    const double* row = cholesky_.data() + i * d;
    double acc = mean_[i];
    for (std::size_t j = 0; j <= i; ++j) acc += row[j] * z[j];
    out[i] = acc;
  }
}

// ---------------------------------------------------------------------------
// MixtureModel

MixtureModel::MixtureModel(std::vector<double> weights, std::vector<GaussianModel> components)
    : weights_(std::move(weights)), components_(std::move(components)) {
  if (components_.empty()) throw InvalidModel("mixture needs at least one component");
  if (weights_.size() != components_.size()) {
    throw InvalidModel("mixture has " + std::to_string(weights_.size()) + " weights for " +
                       std::to_string(components_.size()) + " components");
  }
  double total = 0.0;
  for (double w : weights_) {
    if (!std::isfinite(w) || w < 0.0) throw InvalidModel("mixture weights must be nonnegative");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-9) {
    throw InvalidModel("mixture weights must sum to 1 (got " + std::to_string(total) + ")");
  }
  const std::size_t d = components_.front().dim();
  for (const auto& c : components_) {
    if (c.dim() != d) throw InvalidModel("mixture components differ in dimension");
  }
  log_weights_.reserve(weights_.size());
  cumulative_.reserve(weights_.size());
  double running = 0.0;
  for (double w : weights_) {
    log_weights_.push_back(std::log(w));
    running += w;
    cumulative_.push_back(running / total);
  }
  cumulative_.back() = 1.0;
}

double MixtureModel::log_pdf(std::span<const double> x) const {
  double terms_buf[16];
  std::vector<double> terms_heap;
  double* terms = terms_buf;
  if (components_.size() > 16) {
    terms_heap.resize(components_.size());
    terms = terms_heap.data();
  }
  for (std::size_t k = 0; k < components_.size(); ++k) {
    terms[k] = weights_[k] > 0.0 ? log_weights_[k] + components_[k].log_pdf(x)
                                 : -std::numeric_limits<double>::infinity();
  }
  return log_sum_exp({terms, components_.size()});
}

void MixtureModel::sample_into(Rng& rng, std::span<double> out) const {
  const double u = rng.uniform();
  auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
  auto k = static_cast<std::size_t>(it - cumulative_.begin());
  k = std::min(k, components_.size() - 1);
  components_[k].sample_into(rng, out);
}

// ---------------------------------------------------------------------------
// KdeModel

KdeModel::KdeModel(std::vector<FeatureVector> points, std::vector<double> bandwidths)
    : bandwidths_(std::move(bandwidths)), count_(points.size()) {
  if (points.empty()) throw InvalidModel("kde needs at least one training point");
  if (bandwidths_.empty()) throw InvalidModel("kde needs at least one bandwidth");
  const std::size_t d = bandwidths_.size();
  double log_h = 0.0;
  for (double h : bandwidths_) {
    if (!std::isfinite(h) || h <= 0.0) throw InvalidModel("kde bandwidths must be positive");
    log_h += std::log(h);
  }
  points_.reserve(count_ * d);
  for (const auto& p : points) {
    if (p.dim() != d) throw DimensionMismatch(d, p.dim());
    points_.insert(points_.end(), p.coords().begin(), p.coords().end());
  }
  log_norm_ = -std::log(static_cast<double>(count_)) - static_cast<double>(d) * kHalfLogTwoPi -
              log_h;
}

double KdeModel::log_pdf(std::span<const double> x) const {
  const std::size_t d = dim();
  // Streaming log-sum-exp; sum is kept relative to the running peak.
  double peak = -std::numeric_limits<double>::infinity();
  double sum = 0.0;
  for (std::size_t i = 0; i < count_; ++i) {
    const double* t = points_.data() + i * d;
    double quad = 0.0;
    for (std::size_t j = 0; j < d; ++j) {
      const double u = (x[j] - t[j]) / bandwidths_[j];
      quad += u * u;
    }
    const double e = -0.5 * quad;
    if (e == -std::numeric_limits<double>::infinity()) continue;
    if (e <= peak) {
      sum += std::exp(e - peak);
    } else {
      sum = sum * std::exp(peak - e) + 1.0;
      peak = e;
    }
  }
  if (sum == 0.0) return peak;
  return log_norm_ + peak + std::log(sum);
}

void KdeModel::sample_into(Rng& rng, std::span<double> out) const {
  const std::size_t d = dim();
  const std::size_t i = rng.index(count_);
  const double* t = points_.data() + i * d;
  for (std::size_t j = 0; j < d; ++j) out[j] = t[j] + bandwidths_[j] * rng.normal();
}

// ---------------------------------------------------------------------------
// DensityModel

std::size_t DensityModel::dim() const noexcept {
  return std::visit([](const auto& m) { return m.dim(); }, model_);
}

std::string_view DensityModel::kind() const noexcept {
  switch (model_.index()) {
    case 0:
      return "gaussian";
    case 1:
      return "mixture";
    default:
      return "kde";
  }
}

double DensityModel::log_pdf_unchecked(std::span<const double> x) const {
  return std::visit([x](const auto& m) { return m.log_pdf(x); }, model_);
}

void DensityModel::sample_into(Rng& rng, std::span<double> out) const {
  std::visit([&](const auto& m) { m.sample_into(rng, out); }, model_);
}

double log_pdf(const DensityModel& model, const FeatureVector& x) {
  if (x.dim() != model.dim()) throw DimensionMismatch(model.dim(), x.dim());
  return model.log_pdf_unchecked(x.coords());
}

double pdf(const DensityModel& model, const FeatureVector& x) {
  return std::exp(log_pdf(model, x));
}

std::vector<FeatureVector> sample(const DensityModel& model, Rng& rng, std::size_t count) {
  std::vector<FeatureVector> draws;
  draws.reserve(count);
  std::vector<double> buf(model.dim());
  for (std::size_t i = 0; i < count; ++i) {
    model.sample_into(rng, buf);
    draws.emplace_back(buf);
  }
  return draws;
}

// ---------------------------------------------------------------------------
// Fitting

namespace {

std::size_t check_fit_input(std::span<const FeatureVector> data) {
  if (data.size() < 2) {
    throw TooFewPoints("need at least 2 points, got " + std::to_string(data.size()));
  }
  const std::size_t d = data.front().dim();
  for (const auto& p : data) {
    if (p.dim() != d) throw DimensionMismatch(d, p.dim());
  }
  return d;
}

std::vector<double> column_means(std::span<const FeatureVector> data, std::size_t d) {
  std::vector<double> mean(d, 0.0);
  for (const auto& p : data) {
    for (std::size_t j = 0; j < d; ++j) mean[j] += p[j];
  }
  for (double& m : mean) m /= static_cast<double>(data.size());
  return mean;
}

}  // namespace

KdeModel fit_kde(std::span<const FeatureVector> data, const BandwidthRule& rule) {
  const std::size_t d = check_fit_input(data);
  std::vector<double> bandwidths;

  if (const auto* fixed = std::get_if<FixedBandwidth>(&rule)) {
    if (fixed->values.size() == 1) {
      bandwidths.assign(d, fixed->values.front());
    } else if (fixed->values.size() == d) {
      bandwidths = fixed->values;
    } else {
      throw DimensionMismatch(d, fixed->values.size());
    }
  } else {
    const auto m = static_cast<double>(data.size());
    const std::vector<double> mean = column_means(data, d);
    bandwidths.resize(d);
    for (std::size_t j = 0; j < d; ++j) {
      double lo = data.front()[j];
      double hi = lo;
      double ss = 0.0;
      for (const auto& p : data) {
        lo = std::min(lo, p[j]);
        hi = std::max(hi, p[j]);
        const double dev = p[j] - mean[j];
        ss += dev * dev;
      }
      if (lo == hi) throw ZeroVariance(j);
      const double stddev = std::sqrt(ss / (m - 1.0));
      bandwidths[j] = 1.06 * stddev * std::pow(m, -0.2);
    }
  }
  return KdeModel(std::vector<FeatureVector>(data.begin(), data.end()), std::move(bandwidths));
}

GaussianModel fit_gaussian(std::span<const FeatureVector> data) {
  const std::size_t d = check_fit_input(data);
  std::vector<double> mean = column_means(data, d);
  std::vector<double> cov(d * d, 0.0);
  for (const auto& p : data) {
    for (std::size_t i = 0; i < d; ++i) {
      const double di = p[i] - mean[i];
      for (std::size_t j = 0; j <= i; ++j) cov[i * d + j] += di * (p[j] - mean[j]);
    }
  }
  const double denom = static_cast<double>(data.size()) - 1.0;
  for (std::size_t i = 0; i < d; ++i) {
    if (cov[i * d + i] == 0.0) throw ZeroVariance(i);
    for (std::size_t j = 0; j <= i; ++j) {
      cov[i * d + j] /= denom;
      cov[j * d + i] = cov[i * d + j];
    }
  }
  return GaussianModel(std::move(mean), std::move(cov));
}

}  // namespace sld
