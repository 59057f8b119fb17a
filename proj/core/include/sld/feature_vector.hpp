#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace sld {

/// A point in R^d. Construction rejects empty or non-finite coordinates.
class FeatureVector {
 public:
  explicit FeatureVector(std::vector<double> coords);
  FeatureVector(std::initializer_list<double> coords);

  std::size_t dim() const noexcept { return coords_.size(); }
  double operator[](std::size_t i) const noexcept { return coords_[i]; }
  std::span<const double> coords() const noexcept { return coords_; }
  const double* data() const noexcept { return coords_.data(); }

  friend bool operator==(const FeatureVector&, const FeatureVector&) = default;

 private:
  std::vector<double> coords_;
};

}  // namespace sld
