#include "sld/feature_vector.hpp"

#include <cmath>
#include <string>

#include "sld/error.hpp"

namespace sld {

FeatureVector::FeatureVector(std::vector<double> coords) : coords_(std::move(coords)) {
  if (coords_.empty()) {
    throw DataError("feature vector must have at least one coordinate");
  }
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (!std::isfinite(coords_[i])) {
      throw NonFiniteInput("non-finite coordinate at index " + std::to_string(i));
    }
  }
}

FeatureVector::FeatureVector(std::initializer_list<double> coords)
    : FeatureVector(std::vector<double>(coords)) {}

}  // namespace sld
