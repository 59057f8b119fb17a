#include "sld/analytic.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "sld/error.hpp"
#include "sld/special_functions.hpp"

namespace sld {
namespace {

void require_scale(double scale, const char* name) {
  if (!(scale > 0.0) || !std::isfinite(scale)) {
    throw DataError(std::string(name) + " must be positive and finite");
  }
}

}  // namespace

double gaussian_sld(double sigma, double x) {
  require_scale(sigma, "sigma");
  return std::erfc(std::abs(x) / (std::numbers::sqrt2 * sigma));
}

double cauchy_sld(double gamma, double x) {
  require_scale(gamma, "gamma");
  return 2.0 * std::numbers::inv_pi * std::atan2(gamma, std::abs(x));
}

double cauchy_pdf(double gamma, double x) {
  require_scale(gamma, "gamma");
  return gamma * std::numbers::inv_pi / (x * x + gamma * gamma);
}

double gaussian_region_radius(double sigma, double alpha) {
  require_scale(sigma, "sigma");
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw DataError("analytic threshold needs 0 < alpha < 1, got " + std::to_string(alpha));
  }
  // erfinv(1 - alpha) == erfcinv(alpha), without cancellation for small alpha.
  return std::numbers::sqrt2 * sigma * erfcinv(alpha);
}

Threshold gaussian_threshold(double sigma, SignificanceLevel alpha) {
  const double r = gaussian_region_radius(sigma, alpha.value());
  const double log_peak = -std::log(sigma) - 0.5 * std::log(2.0 * std::numbers::pi);
  return Threshold{log_peak - 0.5 * (r / sigma) * (r / sigma)};
}

}  // namespace sld
