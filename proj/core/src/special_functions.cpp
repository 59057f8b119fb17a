#include "sld/special_functions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace sld {
namespace {

constexpr double kTwoOverSqrtPi = 2.0 * std::numbers::inv_sqrtpi;

// Giles' single-precision erfinv approximation, used only as a starting point.
// `one_minus_x_sq` is (1 - x)(1 + x), passed separately so callers with a
// small complement can form it without cancellation.
double giles_guess(double x, double one_minus_x_sq) {
  double w = -std::log(one_minus_x_sq);
  double p = 0.0;
  if (w < 5.0) {
    w -= 2.5;
    p = 2.81022636e-08;
    p = 3.43273939e-07 + p * w;
    p = -3.5233877e-06 + p * w;
    p = -4.39150654e-06 + p * w;
    p = 0.00021858087 + p * w;
    p = -0.00125372503 + p * w;
    p = -0.00417768164 + p * w;
    p = 0.246640727 + p * w;
    p = 1.50140941 + p * w;
  } else {
    w = std::sqrt(w) - 3.0;
    p = -0.000200214257;
    p = 0.000100950558 + p * w;
    p = 0.00134934322 + p * w;
    p = -0.00367342844 + p * w;
    p = 0.00573950773 + p * w;
    p = -0.0076224613 + p * w;
    p = 0.00943887047 + p * w;
    p = 1.00167406 + p * w;
    p = 2.83297682 + p * w;
  }
  return p * x;
}

// Safeguarded Newton for h(z) = target on a bracket [lo, hi], h monotone.
// `step` returns the Newton correction at z; a non-finite residual or a
// step leaving the bracket falls back to bisection.
template <class Residual, class Step>
double solve_monotone(Residual residual, Step step, double guess, double lo, double hi,
                      bool decreasing) {
  double z = std::clamp(guess, lo, hi);
  for (int iter = 0; iter < 200; ++iter) {
    const double f = residual(z);
    if (f == 0.0) return z;
    const bool below_root = decreasing ? (f > 0.0) : (f < 0.0);
    if (below_root) {
      lo = z;
    } else {
      hi = z;
    }
    double next = std::isfinite(f) ? z - step(z, f) : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (next == z || std::abs(next - z) <= std::numeric_limits<double>::epsilon() * std::abs(z)) {
      return next;
    }
    z = next;
  }
  return z;
}

}  // namespace

double erfcinv(double q) {
  if (std::isnan(q) || q < 0.0 || q > 2.0) return std::numeric_limits<double>::quiet_NaN();
  if (q == 0.0) return std::numeric_limits<double>::infinity();
  if (q == 2.0) return -std::numeric_limits<double>::infinity();
  if (q > 1.0) return -erfcinv(2.0 - q);
  if (q >= 0.5) {
    // erfinv(1 - q) with 1 - q in [0, 0.5]; small argument branch is exact enough.
    return erfinv(1.0 - q);
  }
  // Newton on log erfc: erfc itself spans hundreds of decades here.
  const double log_q = std::log(q);
  const double guess = q > 1e-30 ? giles_guess(1.0, q * (2.0 - q)) : std::sqrt(-log_q);
  return solve_monotone(
      [log_q](double z) { return std::log(std::erfc(z)) - log_q; },
      [](double z, double f) {
        const double log_slope = -z * z - std::log(std::erfc(z));
        return -f / (kTwoOverSqrtPi * std::exp(log_slope));
      },
      guess, 0.0, 27.5, true);
}

double erfinv(double y) {
  if (std::isnan(y) || y < -1.0 || y > 1.0) return std::numeric_limits<double>::quiet_NaN();
  if (y == 1.0) return std::numeric_limits<double>::infinity();
  if (y == -1.0) return -std::numeric_limits<double>::infinity();
  if (y == 0.0) return 0.0;
  if (y < 0.0) return -erfinv(-y);
  if (y > 0.5) return erfcinv(1.0 - y);
  const double guess = giles_guess(y, (1.0 - y) * (1.0 + y));
  return solve_monotone(
      [y](double z) { return std::erf(z) - y; },
      [](double z, double f) { return f / (kTwoOverSqrtPi * std::exp(-z * z)); }, guess, 0.0,
      0.5, false);
}

}  // namespace sld
