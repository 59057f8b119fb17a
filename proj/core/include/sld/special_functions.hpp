#pragma once

namespace sld {

/// Inverse error function on (-1, 1); returns +-inf at +-1 and NaN outside.
/// Absolute error below 1e-10 (typically a few ulp).
double erfinv(double y);

/// Inverse complementary error function on (0, 2); erfcinv(q) = erfinv(1 - q)
/// without the cancellation for small q.
double erfcinv(double q);

}  // namespace sld
