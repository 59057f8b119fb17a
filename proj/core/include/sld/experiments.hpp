#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <vector>

#include <nlohmann/json.hpp>

namespace sld {

/// Settings for the RMSE-versus-n study on a standard Gaussian.
///
/// For dimension 1 the ground truth is the closed-form significance level.
/// For higher dimensions it is a reference estimator of size reference_n,
/// built from a stream disjoint from the repetitions.
struct RmseExperimentConfig {
  std::vector<std::size_t> n_values{16, 64, 256, 1024, 4096};
  std::size_t repetitions = 500;
  std::vector<double> eval_levels{0.05, 0.5};
  std::uint64_t seed = 1;
  std::size_t dimension = 1;
  std::size_t reference_n = 1'000'000;

  /// Throws SchemaError describing the first violated invariant.
  void validate() const;
};

struct RmseRow {
  std::size_t n;
  double level;             ///< nominal CDF level of the query point
  double truth;             ///< ground-truth significance level at the query point
  double empirical_rmse;
  double theoretical_rmse;  ///< sqrt(truth (1 - truth) / n)

  double relative_deviation() const noexcept;
};

struct RmseExperimentResult {
  std::vector<RmseRow> rows;  ///< n-major, then level, in config order
};

/// Repetition r builds its estimator with seed derive_seed(config.seed, r),
/// i.e. SplitMix64(seed + r), for every n.
RmseExperimentResult run_rmse_experiment(const RmseExperimentConfig& config);

/// |empirical - theoretical| <= rel_tol * theoretical and empirical <=
/// (1 + rel_tol) / sqrt(4 n).
bool row_within_tolerance(const RmseRow& row, double rel_tol);

/// Tab-separated "n level empirical_rmse theoretical_rmse" with a header line
/// and 17 significant digits. Throws DataError for an empty result (no file
/// is created) or on I/O failure.
void export_plot_data(const RmseExperimentResult& result, const std::filesystem::path& path);

/// Missing keys keep their defaults; keys: n_values, repetitions,
/// eval_levels, seed, dimension, reference_n.
RmseExperimentConfig experiment_config_from_json(const nlohmann::json& doc);
nlohmann::json experiment_config_to_json(const RmseExperimentConfig& config);

}  // namespace sld
