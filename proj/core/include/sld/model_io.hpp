#pragma once

#include <filesystem>

#include <nlohmann/json.hpp>

#include "sld/density_models.hpp"

namespace sld {

inline constexpr int kModelSchemaVersion = 1;

/// Versioned model document:
///   gaussian: {"schema":1, "kind":"gaussian", "mean":[...], "covariance":[[...],...]}
///   mixture:  {"schema":1, "kind":"mixture", "weights":[...],
///              "components":[{"mean":[...], "covariance":[[...],...]}, ...]}
///   kde:      {"schema":1, "kind":"kde", "bandwidths":[...], "points":[[...],...]}
nlohmann::json model_to_json(const DensityModel& model);

/// Parses and validates a model document. Throws SchemaError on unknown
/// schema versions or malformed documents, and the model's own errors on
/// invalid parameters.
DensityModel model_from_json(const nlohmann::json& doc);

void save_model(const DensityModel& model, const std::filesystem::path& path);
DensityModel load_model(const std::filesystem::path& path);

/// Read a whole file as JSON; throws DataError naming the path on failure.
nlohmann::json read_json_file(const std::filesystem::path& path);
/// Write JSON (2-space indent, trailing newline); throws DataError on I/O failure.
void write_json_file(const nlohmann::json& doc, const std::filesystem::path& path);

}  // namespace sld
