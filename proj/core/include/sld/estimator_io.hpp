#pragma once

#include <filesystem>

#include <nlohmann/json.hpp>

#include "sld/estimator.hpp"

namespace sld {

inline constexpr int kEstimatorSchemaVersion = 1;

/// {"schema":1, "n":..., "seed":..., "sorted_log_densities":[...], "model":{...}}
nlohmann::json estimator_to_json(const SldEstimator& est);

/// Re-validates n, finiteness and sortedness of the stored entries.
SldEstimator estimator_from_json(const nlohmann::json& doc);

void save_estimator(const SldEstimator& est, const std::filesystem::path& path);
SldEstimator load_estimator(const std::filesystem::path& path);

}  // namespace sld
