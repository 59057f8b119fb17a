#pragma once

#include "sld/estimator.hpp"

namespace sld {

/// Closed-form significance level of x under N(0, sigma^2):
/// 1 - erf(|x| / (sqrt(2) sigma)), evaluated as erfc for tail accuracy.
double gaussian_sld(double sigma, double x);

/// Closed-form significance level of x under a centered Cauchy with scale gamma.
///
/// The super-level set {p >= p(x)} is [-|x|, |x|], so the mass below p(x) is
/// the two tails: 1 - (2/pi) atan(|x|/gamma) = (2/pi) atan(gamma/|x|).
double cauchy_sld(double gamma, double x);

/// Centered Cauchy density, gamma / (pi (x^2 + gamma^2)).
double cauchy_pdf(double gamma, double x);

/// Half-width x_alpha = sqrt(2) sigma erfinv(1 - alpha) of the central
/// interval holding mass 1 - alpha. Requires 0 < alpha < 1.
double gaussian_region_radius(double sigma, double alpha);

/// Level-set threshold of N(0, sigma^2) for significance level alpha: the
/// density value at gaussian_region_radius. Throws DataError at alpha 0 or 1.
Threshold gaussian_threshold(double sigma, SignificanceLevel alpha);

}  // namespace sld
