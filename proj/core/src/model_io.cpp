#include "sld/model_io.hpp"

#include <fstream>
#include <string>

#include "sld/error.hpp"

namespace sld {
namespace {

using nlohmann::json;

json gaussian_params(const GaussianModel& g) {
  const std::size_t d = g.dim();
  json cov = json::array();
  for (std::size_t i = 0; i < d; ++i) {
    auto row = g.covariance().subspan(i * d, d);
    cov.push_back(std::vector<double>(row.begin(), row.end()));
  }
  return json{{"mean", std::vector<double>(g.mean().begin(), g.mean().end())},
              {"covariance", std::move(cov)}};
}

const json& require(const json& doc, const char* key) {
  auto it = doc.find(key);
  if (it == doc.end()) throw SchemaError(std::string("missing key \"") + key + "\"");
  return *it;
}

std::vector<double> number_array(const json& node, const char* what) {
  if (!node.is_array()) throw SchemaError(std::string(what) + " must be an array");
  std::vector<double> out;
  out.reserve(node.size());
  for (const auto& v : node) {
    if (!v.is_number()) throw SchemaError(std::string(what) + " must contain only numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

std::vector<double> matrix_rows(const json& node, std::size_t cols, const char* what) {
  if (!node.is_array()) throw SchemaError(std::string(what) + " must be an array of rows");
  std::vector<double> flat;
  for (const auto& row : node) {
    auto values = number_array(row, what);
    if (values.size() != cols) {
      throw SchemaError(std::string(what) + " rows must have " + std::to_string(cols) +
                        " entries");
    }
    flat.insert(flat.end(), values.begin(), values.end());
  }
  return flat;
}

GaussianModel gaussian_from(const json& doc) {
  auto mean = number_array(require(doc, "mean"), "mean");
  const json& cov_node = require(doc, "covariance");
  if (cov_node.size() != mean.size()) throw SchemaError("covariance must be square");
  auto cov = matrix_rows(cov_node, mean.size(), "covariance");
  return GaussianModel(std::move(mean), std::move(cov));
}

}  // namespace

json model_to_json(const DensityModel& model) {
  json doc{{"schema", kModelSchemaVersion}, {"kind", std::string(model.kind())}};
  std::visit(
      [&doc](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, GaussianModel>) {
          doc.update(gaussian_params(m));
        } else if constexpr (std::is_same_v<T, MixtureModel>) {
          doc["weights"] = std::vector<double>(m.weights().begin(), m.weights().end());
          json comps = json::array();
          for (const auto& c : m.components()) comps.push_back(gaussian_params(c));
          doc["components"] = std::move(comps);
        } else {
          doc["bandwidths"] = std::vector<double>(m.bandwidths().begin(), m.bandwidths().end());
          json pts = json::array();
          for (std::size_t i = 0; i < m.size(); ++i) {
            auto p = m.point(i);
            pts.push_back(std::vector<double>(p.begin(), p.end()));
          }
          doc["points"] = std::move(pts);
        }
      },
      model.variant());
  return doc;
}

DensityModel model_from_json(const json& doc) {
  if (!doc.is_object()) throw SchemaError("model document must be a JSON object");
  const json& schema = require(doc, "schema");
  if (!schema.is_number_integer() || schema.get<int>() != kModelSchemaVersion) {
    throw SchemaError("unsupported model schema version " + schema.dump());
  }
  const json& kind_node = require(doc, "kind");
  if (!kind_node.is_string()) throw SchemaError("\"kind\" must be a string");
  const auto kind = kind_node.get<std::string>();

  if (kind == "gaussian") return gaussian_from(doc);

  if (kind == "mixture") {
    auto weights = number_array(require(doc, "weights"), "weights");
    const json& comps = require(doc, "components");
    if (!comps.is_array()) throw SchemaError("components must be an array");
    std::vector<GaussianModel> components;
    for (const auto& c : comps) components.push_back(gaussian_from(c));
    return MixtureModel(std::move(weights), std::move(components));
  }

  if (kind == "kde") {
    auto bandwidths = number_array(require(doc, "bandwidths"), "bandwidths");
    const json& pts = require(doc, "points");
    if (!pts.is_array()) throw SchemaError("points must be an array");
    std::vector<FeatureVector> points;
    points.reserve(pts.size());
    for (const auto& p : pts) points.emplace_back(number_array(p, "points"));
    return KdeModel(std::move(points), std::move(bandwidths));
  }

  throw SchemaError("unknown model kind \"" + kind + "\"");
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

void write_json_file(const json& doc, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot write " + path.string());
  out << doc.dump(2) << '\n';
  if (!out) throw DataError("write failed for " + path.string());
}

void save_model(const DensityModel& model, const std::filesystem::path& path) {
  write_json_file(model_to_json(model), path);
}

DensityModel load_model(const std::filesystem::path& path) {
  return model_from_json(read_json_file(path));
}

}  // namespace sld
