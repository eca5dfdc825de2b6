#pragma once

// Command-line front end. Commands: decompose, filter, edges, sweep, demo1d.
// The entry points are library functions so tests can drive them in-process.

#include <array>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "xdiff/signal_io.hpp"

namespace xdiff::cli {

/// Process exit codes.
enum ExitCode : int {
  kOk = 0,
  kFailure = 1,
  kUsage = 2,
  kNotPositiveDefinite = 3,
  kZeroCoupling = 4,
  kIo = 5,
};

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Everything a run needs. Mirrors the JSON config document; command-line
/// flags override keys loaded from --config.
struct RunManifest {
  std::array<double, 4> d{1.0, 0.9, 1.0, 1.0};
  double p = 2.0;
  int kind = 0;
  std::optional<std::vector<double>> times;
  std::optional<NoiseSpec> noise;
  std::string input;
  std::string input_v;
  std::string reference;
  std::string output_dir = ".";
  double pad = 0.25;
  bool raw = false;
  bool mse_psnr = false;
  // sweep axes
  std::vector<double> p_values;
  std::vector<std::array<double, 4>> d_list;
  std::vector<double> sigmas;
  std::vector<int> kinds;
  // demo1d
  std::string pattern = "box";
  double L = 64.0;
  long N = 1024;
};

/// Parses a config JSON document. Unknown keys are a UsageError.
RunManifest manifest_from_json(const std::string& text);

/// Throws UsageError unless the times are non-empty, nonnegative and
/// strictly increasing.
void validate_time_grid(const std::vector<double>& times);

/// Parses "a,b,c" into reals (UsageError on bad input).
std::vector<double> parse_real_list(const std::string& text);

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace xdiff::cli
