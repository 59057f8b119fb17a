#include "commands.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <memory>
#include <sstream>

#include <CLI11.hpp>

#include "csv.hpp"
#include "sld/density_models.hpp"
#include "sld/estimator.hpp"
#include "sld/estimator_io.hpp"
#include "sld/experiments.hpp"
#include "sld/model_io.hpp"
#include "sld/random.hpp"

namespace sld::cli {
namespace {

std::vector<double> parse_bandwidths(const std::string& text) {
  std::vector<double> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const double h = std::stod(item, &used);
      if (used != item.size() || !(h > 0.0) || !std::isfinite(h)) throw std::invalid_argument("");
      values.push_back(h);
    } catch (const std::logic_error&) {
      throw UsageError("invalid bandwidth '" + item + "'");
    }
  }
  if (values.empty()) throw UsageError("kde:bandwidth= needs at least one value");
  return values;
}

DensityModel fit_from_spec(const std::string& spec, const std::vector<FeatureVector>& rows) {
  if (spec == "gaussian") return fit_gaussian(rows);
  if (spec == "kde") return fit_kde(rows);
  const std::string kde_prefix = "kde:bandwidth=";
  if (spec.rfind(kde_prefix, 0) == 0) {
    return fit_kde(rows, FixedBandwidth{parse_bandwidths(spec.substr(kde_prefix.size()))});
  }
  if (spec.rfind("mixture", 0) == 0) {
    throw UsageError(
        "mixture fitting is not supported; write the mixture model JSON by hand "
        "(kind \"mixture\") and pass it to `build`");
  }
  throw UsageError("unknown model spec '" + spec + "' (expected gaussian, kde or kde:bandwidth=h)");
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot write " + path.string());
  return out;
}

void print_line(std::ostream& out, const char* fmt, double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, fmt, value);
  out << buf << '\n';
}

}  // namespace

void cmd_fit(const FitOptions& opts, std::ostream& out) {
  const CsvTable table = read_csv(opts.input);
  const DensityModel model = fit_from_spec(opts.model_spec, table.rows);
  save_model(model, opts.output);
  out << "fitted " << model.kind() << " model (d = " << model.dim() << ") on "
      << table.rows.size() << " rows -> " << opts.output.string() << '\n';
}

void cmd_build(const BuildOptions& opts, std::ostream& out) {
  if (opts.rmse && opts.n) throw UsageError("give either --rmse or --n, not both");
  std::size_t n = 0;
  if (opts.n) {
    n = *opts.n;
    if (n == 0) throw UsageError("--n must be at least 1");
  } else {
    const double rmse = opts.rmse.value_or(kDefaultRmse);
    if (!(rmse > 0.0 && rmse <= 0.5)) throw UsageError("--rmse must lie in (0, 0.5]");
    const double needed = std::ceil(1.0 / (4.0 * rmse * rmse));
    if (needed > static_cast<double>(kMaxSampleCount)) {
      throw UsageError("--rmse " + format_double(rmse) + " needs more than 1e8 samples");
    }
    n = required_sample_count(RmseBudget(rmse));
  }
  if (n > kMaxSampleCount) throw UsageError("sample count above 1e8 is not supported");

  auto model = std::make_shared<const DensityModel>(load_model(opts.model));
  const SldEstimator est = build_estimator(std::move(model), n, opts.seed);
  save_estimator(est, opts.output);
  out << "n = " << n << '\n';
  print_line(out, "worst-case rmse bound = %.6g", worst_case_rmse(n));
}

std::size_t cmd_score(const ScoreOptions& opts, std::ostream& out) {
  if (!(opts.alpha >= 0.0 && opts.alpha <= 1.0)) throw UsageError("--alpha must lie in [0, 1]");
  const SldEstimator est = load_estimator(opts.estimator);
  const CsvTable table = read_csv(opts.input);
  const std::size_t d = est.model().dim();
  if (table.columns() != d) {
    throw DataError("input has " + std::to_string(table.columns()) +
                    " columns but the model expects " + std::to_string(d));
  }

  const SignificanceLevel alpha(opts.alpha);
  std::string text = "row,z,verdict\n";
  std::size_t outliers = 0;
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    const auto c = classify(est, table.rows[i], alpha);
    const bool outlier = c.verdict == Verdict::Outlier;
    outliers += outlier ? 1 : 0;
    text += std::to_string(i + 1) + ',' + format_double(c.z) + ',' +
            (outlier ? "outlier" : "inlier") + '\n';
  }
  auto file = open_output(opts.output);
  file << text;
  if (!file) throw DataError("write failed for " + opts.output.string());

  out << "outliers: " << outliers << " of " << table.rows.size();
  if (!table.rows.empty()) {
    char buf[32];
    std::snprintf(buf, sizeof buf, " (%.4f)",
                  static_cast<double>(outliers) / static_cast<double>(table.rows.size()));
    out << buf;
  }
  out << '\n';
  return outliers;
}

void cmd_threshold(const ThresholdOptions& opts, std::ostream& out) {
  if (!(opts.alpha >= 0.0 && opts.alpha <= 1.0)) throw UsageError("--alpha must lie in [0, 1]");
  const SldEstimator est = load_estimator(opts.estimator);
  const Threshold th = threshold_for(est, SignificanceLevel(opts.alpha));
  print_line(out, "theta = %.6g", th.theta());
  out << "log_theta = " << format_double(th.log_theta) << '\n';
}

bool cmd_validate(const ValidateOptions& opts, std::ostream& out) {
  const RmseExperimentConfig config = opts.config
                                          ? experiment_config_from_json(read_json_file(*opts.config))
                                          : RmseExperimentConfig{};
  const RmseExperimentResult result = run_rmse_experiment(config);
  export_plot_data(result, opts.output);

  bool all_pass = true;
  char buf[160];
  for (const auto& row : result.rows) {
    const bool pass = row_within_tolerance(row, kValidationTolerance);
    all_pass = all_pass && pass;
    std::snprintf(buf, sizeof buf, "n=%-8zu level=%-6g empirical=%.6f theoretical=%.6f dev=%+.3f %s",
                  row.n, row.level, row.empirical_rmse, row.theoretical_rmse,
                  row.relative_deviation(), pass ? "PASS" : "FAIL");
    out << buf << '\n';
  }
  out << (all_pass ? "validation passed" : "validation FAILED") << " (tolerance "
      << kValidationTolerance * 100 << "%)\n";
  return all_pass;
}

void cmd_sample(const SampleOptions& opts, std::ostream& out) {
  if (opts.count == 0) throw UsageError("--count must be at least 1");
  if (opts.count > kMaxSampleCount) throw UsageError("--count above 1e8 is not supported");
  const DensityModel model = load_model(opts.model);
  Rng rng(opts.seed);
  const std::size_t d = model.dim();

  std::string text;
  for (std::size_t j = 0; j < d; ++j) text += (j ? ",x" : "x") + std::to_string(j + 1);
  text += '\n';
  std::vector<double> point(d);
  for (std::size_t i = 0; i < opts.count; ++i) {
    model.sample_into(rng, point);
    for (std::size_t j = 0; j < d; ++j) {
      if (j) text += ',';
      text += format_double(point[j]);
    }
    text += '\n';
  }
  if (opts.output) {
    auto file = open_output(*opts.output);
    file << text;
    if (!file) throw DataError("write failed for " + opts.output->string());
  } else {
    out << text;
  }
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Significance level distributions: prediction regions and outlier scores"};
  app.require_subcommand(1);

  FitOptions fit;
  auto* fit_cmd = app.add_subcommand("fit", "Fit a density model to CSV data");
  fit_cmd->add_option("input", fit.input, "Input CSV")->required();
  fit_cmd->add_option("--model", fit.model_spec, "gaussian | kde | kde:bandwidth=h[,h...]")
      ->capture_default_str();
  fit_cmd->add_option("-o,--out", fit.output, "Output model JSON")->required();

  BuildOptions build;
  double build_rmse = kDefaultRmse;
  std::size_t build_n = 0;
  auto* build_cmd = app.add_subcommand("build", "Build and persist an estimator");
  build_cmd->add_option("model", build.model, "Model JSON")->required();
  auto* rmse_opt = build_cmd->add_option("--rmse", build_rmse, "Worst-case RMSE budget")
                       ->capture_default_str();
  auto* n_opt = build_cmd->add_option("-n,--n", build_n, "Explicit sample count");
  rmse_opt->excludes(n_opt);
  build_cmd->add_option("--seed", build.seed, "RNG seed")->capture_default_str();
  build_cmd->add_option("-o,--out", build.output, "Output estimator JSON")->required();

  ScoreOptions score;
  auto* score_cmd = app.add_subcommand("score", "Score CSV rows against an estimator");
  score_cmd->add_option("estimator", score.estimator, "Estimator JSON")->required();
  score_cmd->add_option("input", score.input, "Input CSV")->required();
  score_cmd->add_option("--alpha", score.alpha, "Significance level")->capture_default_str();
  score_cmd->add_option("-o,--out", score.output, "Output CSV (row,z,verdict)")->required();

  ThresholdOptions threshold;
  auto* threshold_cmd = app.add_subcommand("threshold", "Print the level-set threshold");
  threshold_cmd->add_option("estimator", threshold.estimator, "Estimator JSON")->required();
  threshold_cmd->add_option("--alpha", threshold.alpha, "Significance level")
      ->capture_default_str();

  ValidateOptions validate;
  std::filesystem::path validate_config;
  auto* validate_cmd = app.add_subcommand("validate", "Run the RMSE-versus-n experiment");
  auto* config_opt = validate_cmd->add_option("-c,--config", validate_config, "Config JSON");
  validate_cmd->add_option("-o,--out", validate.output, "Output TSV")->required();

  SampleOptions sample_opts;
  std::filesystem::path sample_out;
  auto* sample_cmd = app.add_subcommand("sample", "Draw samples from a model as CSV");
  sample_cmd->add_option("model", sample_opts.model, "Model JSON")->required();
  sample_cmd->add_option("--count", sample_opts.count, "Number of draws")->capture_default_str();
  sample_cmd->add_option("--seed", sample_opts.seed, "RNG seed")->capture_default_str();
  auto* sample_out_opt = sample_cmd->add_option("-o,--out", sample_out, "Output CSV (default stdout)");

  std::vector<std::string> storage = args;
  std::vector<char*> argv;
  argv.reserve(storage.size());
  for (auto& s : storage) argv.push_back(s.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kSuccess : kUsageError;
  }

  try {
    if (*fit_cmd) {
      cmd_fit(fit, out);
    } else if (*build_cmd) {
      if (n_opt->count() > 0) build.n = build_n;
      if (rmse_opt->count() > 0 || !build.n) build.rmse = build_rmse;
      cmd_build(build, out);
    } else if (*score_cmd) {
      cmd_score(score, out);
    } else if (*threshold_cmd) {
      cmd_threshold(threshold, out);
    } else if (*validate_cmd) {
      if (config_opt->count() > 0) validate.config = validate_config;
      if (!cmd_validate(validate, out)) return kNumericError;
    } else if (*sample_cmd) {
      if (sample_out_opt->count() > 0) sample_opts.output = sample_out;
      cmd_sample(sample_opts, out);
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const DataError& e) {
    err << "error: " << e.what() << '\n';
    return kDataError;
  } catch (const NumericError& e) {
    err << "error: " << e.what() << '\n';
    return kNumericError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kNumericError;
  }
  return kSuccess;
}

}  // namespace sld::cli
