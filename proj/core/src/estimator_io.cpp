#include "sld/estimator_io.hpp"

#include <string>

#include "sld/error.hpp"
#include "sld/model_io.hpp"

namespace sld {

using nlohmann::json;

json estimator_to_json(const SldEstimator& est) {
  const auto entries = est.sorted_log_densities();
  return json{{"schema", kEstimatorSchemaVersion},
              {"n", est.size()},
              {"seed", est.seed()},
              {"sorted_log_densities", std::vector<double>(entries.begin(), entries.end())},
              {"model", model_to_json(est.model())}};
}

SldEstimator estimator_from_json(const json& doc) {
  if (!doc.is_object()) throw SchemaError("estimator document must be a JSON object");
  auto field = [&doc](const char* key) -> const json& {
    auto it = doc.find(key);
    if (it == doc.end()) throw SchemaError(std::string("missing key \"") + key + "\"");
    return *it;
  };
  const json& schema = field("schema");
  if (!schema.is_number_integer() || schema.get<int>() != kEstimatorSchemaVersion) {
    throw SchemaError("unsupported estimator schema version " + schema.dump());
  }
  const json& n = field("n");
  const json& seed = field("seed");
  const json& entries = field("sorted_log_densities");
  if (!n.is_number_unsigned()) throw SchemaError("\"n\" must be a positive integer");
  if (!seed.is_number_unsigned()) throw SchemaError("\"seed\" must be a nonnegative integer");
  if (!entries.is_array()) throw SchemaError("\"sorted_log_densities\" must be an array");

  std::vector<double> values;
  values.reserve(entries.size());
  for (const auto& v : entries) {
    if (!v.is_number()) throw SchemaError("\"sorted_log_densities\" must contain only numbers");
    values.push_back(v.get<double>());
  }
  if (values.size() != n.get<std::size_t>()) {
    throw SchemaError("\"n\" is " + n.dump() + " but " + std::to_string(values.size()) +
                      " entries are stored");
  }
  auto model = std::make_shared<const DensityModel>(model_from_json(field("model")));
  return SldEstimator(std::move(model), std::move(values), seed.get<std::uint64_t>());
}

void save_estimator(const SldEstimator& est, const std::filesystem::path& path) {
  write_json_file(estimator_to_json(est), path);
}

SldEstimator load_estimator(const std::filesystem::path& path) {
  return estimator_from_json(read_json_file(path));
}

}  // namespace sld
