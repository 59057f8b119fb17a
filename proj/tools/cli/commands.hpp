#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "sld/error.hpp"

namespace sld::cli {

/// Process exit codes.
enum ExitCode : int {
  kSuccess = 0,
  kUsageError = 1,
  kDataError = 2,
  kNumericError = 3,
};

/// Invalid flags or flag combinations.
class UsageError : public Error {
 public:
  using Error::Error;
};

inline constexpr std::size_t kMaxSampleCount = 100'000'000;
inline constexpr double kDefaultRmse = 0.005;
inline constexpr double kValidationTolerance = 0.15;

struct FitOptions {
  std::filesystem::path input;
  std::string model_spec = "kde";  ///< gaussian | kde | kde:bandwidth=h[,h...]
  std::filesystem::path output;
};

struct BuildOptions {
  std::filesystem::path model;
  std::optional<double> rmse;
  std::optional<std::size_t> n;
  std::uint64_t seed = 1;
  std::filesystem::path output;
};

struct ScoreOptions {
  std::filesystem::path estimator;
  std::filesystem::path input;
  double alpha = 0.05;
  std::filesystem::path output;
};

struct ThresholdOptions {
  std::filesystem::path estimator;
  double alpha = 0.05;
};

struct ValidateOptions {
  std::optional<std::filesystem::path> config;
  std::filesystem::path output;
};

struct SampleOptions {
  std::filesystem::path model;
  std::size_t count = 1000;
  std::uint64_t seed = 1;
  std::optional<std::filesystem::path> output;  ///< stdout when absent
};

// Each command writes its human-readable report to `out` and throws on
// failure; run_cli maps exceptions to exit codes.
void cmd_fit(const FitOptions& opts, std::ostream& out);
void cmd_build(const BuildOptions& opts, std::ostream& out);
/// Returns the number of rows flagged as outliers.
std::size_t cmd_score(const ScoreOptions& opts, std::ostream& out);
void cmd_threshold(const ThresholdOptions& opts, std::ostream& out);
/// Returns true when every row passes the validation gate.
bool cmd_validate(const ValidateOptions& opts, std::ostream& out);
void cmd_sample(const SampleOptions& opts, std::ostream& out);

/// Parse argv, dispatch to a command and return its exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sld::cli
