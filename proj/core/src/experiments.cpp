#include "sld/experiments.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <memory>
#include <numbers>
#include <string>

#include "sld/analytic.hpp"
#include "sld/density_models.hpp"
#include "sld/error.hpp"
#include "sld/estimator.hpp"
#include "sld/random.hpp"

namespace sld {
namespace {

constexpr std::uint64_t kReferenceStreamTag = 0x7265666572656e63ULL;

struct QueryPoint {
  FeatureVector x;
  double truth;
};

// Point on the first axis whose log-density equals log_theta.
FeatureVector point_at_log_density(std::size_t dim, double log_theta) {
  const double log_peak = -0.5 * static_cast<double>(dim) * std::log(2.0 * std::numbers::pi);
  std::vector<double> coords(dim, 0.0);
  coords[0] = std::sqrt(std::max(0.0, 2.0 * (log_peak - log_theta)));
  return FeatureVector(std::move(coords));
}

std::vector<QueryPoint> query_points(const RmseExperimentConfig& config,
                                     const std::shared_ptr<const DensityModel>& model) {
  std::vector<QueryPoint> points;
  if (config.dimension == 1) {
    for (double level : config.eval_levels) {
      const double x = gaussian_region_radius(1.0, level);
      points.push_back({FeatureVector{x}, gaussian_sld(1.0, x)});
    }
    return points;
  }
  const auto reference = build_estimator(
      model, config.reference_n, mix_seed(mix_seed(config.seed) ^ kReferenceStreamTag));
  for (double level : config.eval_levels) {
    const Threshold th = threshold_for(reference, SignificanceLevel(level));
    FeatureVector x = point_at_log_density(config.dimension, th.log_theta);
    const double truth = significance_level_of(reference, x);
    points.push_back({std::move(x), truth});
  }
  return points;
}

}  // namespace

void RmseExperimentConfig::validate() const {
  if (n_values.empty()) throw SchemaError("n_values must not be empty");
  for (auto n : n_values) {
    if (n == 0) throw SchemaError("n_values entries must be >= 1");
  }
  if (repetitions == 0) throw SchemaError("repetitions must be >= 1");
  if (eval_levels.empty()) throw SchemaError("eval_levels must not be empty");
  for (double level : eval_levels) {
    if (!(level > 0.0 && level < 1.0)) throw SchemaError("eval_levels entries must lie in (0, 1)");
  }
  if (dimension == 0) throw SchemaError("dimension must be >= 1");
  if (dimension > 1 && reference_n == 0) throw SchemaError("reference_n must be >= 1");
}

double RmseRow::relative_deviation() const noexcept {
  return (empirical_rmse - theoretical_rmse) / theoretical_rmse;
}

RmseExperimentResult run_rmse_experiment(const RmseExperimentConfig& config) {
  config.validate();
  auto model = std::make_shared<const DensityModel>(GaussianModel::standard(config.dimension));
  const auto points = query_points(config, model);

  RmseExperimentResult result;
  for (std::size_t n : config.n_values) {
    std::vector<double> sum_sq(points.size(), 0.0);
    for (std::size_t r = 0; r < config.repetitions; ++r) {
      const auto est = build_estimator(model, n, derive_seed(config.seed, r));
      for (std::size_t q = 0; q < points.size(); ++q) {
        const double err = significance_level_of(est, points[q].x) - points[q].truth;
        sum_sq[q] += err * err;
      }
    }
    for (std::size_t q = 0; q < points.size(); ++q) {
      result.rows.push_back(RmseRow{
          n, config.eval_levels[q], points[q].truth,
          std::sqrt(sum_sq[q] / static_cast<double>(config.repetitions)),
          theoretical_rmse(points[q].truth, n)});
    }
  }
  return result;
}

bool row_within_tolerance(const RmseRow& row, double rel_tol) {
  return std::abs(row.empirical_rmse - row.theoretical_rmse) <= rel_tol * row.theoretical_rmse &&
         row.empirical_rmse <= (1.0 + rel_tol) * worst_case_rmse(row.n);
}

void export_plot_data(const RmseExperimentResult& result, const std::filesystem::path& path) {
  if (result.rows.empty()) throw DataError("experiment result is empty; nothing to export");
  std::string text = "n\tlevel\tempirical_rmse\ttheoretical_rmse\n";
  char line[128];
  for (const auto& row : result.rows) {
    std::snprintf(line, sizeof line, "%zu\t%.17g\t%.17g\t%.17g\n", row.n, row.level,
                  row.empirical_rmse, row.theoretical_rmse);
    text += line;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot write " + path.string());
  out << text;
  if (!out) throw DataError("write failed for " + path.string());
}

namespace {

// Parsed text yields unsigned numbers; documents built in code yield signed ones.
bool is_nonnegative_integer(const nlohmann::json& v) {
  return v.is_number_unsigned() || (v.is_number_integer() && v.get<std::int64_t>() >= 0);
}

}  // namespace

RmseExperimentConfig experiment_config_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw SchemaError("experiment config must be a JSON object");
  RmseExperimentConfig config;
  auto read_count = [&doc](const char* key, std::size_t& out) {
    if (auto it = doc.find(key); it != doc.end()) {
      if (!is_nonnegative_integer(*it)) {
        throw SchemaError(std::string("\"") + key + "\" must be a nonnegative integer");
      }
      out = it->get<std::size_t>();
    }
  };
  try {
    if (auto it = doc.find("n_values"); it != doc.end()) {
      if (!it->is_array()) throw SchemaError("\"n_values\" must be an array");
      config.n_values.clear();
      for (const auto& v : *it) {
        if (!is_nonnegative_integer(v)) throw SchemaError("\"n_values\" must hold positive integers");
        config.n_values.push_back(v.get<std::size_t>());
      }
    }
    if (auto it = doc.find("eval_levels"); it != doc.end()) {
      if (!it->is_array()) throw SchemaError("\"eval_levels\" must be an array");
      config.eval_levels.clear();
      for (const auto& v : *it) {
        if (!v.is_number()) throw SchemaError("\"eval_levels\" must hold numbers");
        config.eval_levels.push_back(v.get<double>());
      }
    }
    read_count("repetitions", config.repetitions);
    read_count("dimension", config.dimension);
    read_count("reference_n", config.reference_n);
    if (auto it = doc.find("seed"); it != doc.end()) {
      if (!is_nonnegative_integer(*it)) throw SchemaError("\"seed\" must be a nonnegative integer");
      config.seed = it->get<std::uint64_t>();
    }
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(e.what());
  }
  config.validate();
  return config;
}

nlohmann::json experiment_config_to_json(const RmseExperimentConfig& config) {
  return nlohmann::json{{"n_values", config.n_values},     {"repetitions", config.repetitions},
                        {"eval_levels", config.eval_levels}, {"seed", config.seed},
                        {"dimension", config.dimension},   {"reference_n", config.reference_n}};
}

}  // namespace sld
