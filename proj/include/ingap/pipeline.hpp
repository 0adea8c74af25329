#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "ingap/evaluate.hpp"
#include "ingap/kernels.hpp"

namespace ingap {

/// Raised for bad configuration values; maps to exit code 2.
class ConfigError : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

struct RunConfig {
  std::string input_path;
  std::string timestamp_column = "timestamp";
  std::string value_column = "value";
  std::size_t n_coeffs = 1024;
  KernelFamily kernel = KernelFamily::Sobolev;
  double alpha = 1.0;
  int beta = 2;
  std::vector<double> gammas{1e-2};  // the first entry drives solve/eval; kernel dumps them all
  std::vector<MaskMode> modes{MaskMode::Random, MaskMode::ContiguousBlock};
  std::vector<double> fractions{0.1, 0.2, 0.3};
  int replicates = 7;
  int permutations = 10000;
  std::string output_dir = "out";
  std::uint64_t seed = 0;
  bool report_timings = false;

  /// Kernel for solve/eval built from family, alpha, beta and gammas[0].
  WeightKernel make_kernel() const;
  /// Flat key -> value view, echoed into every report.
  std::map<std::string, std::string> echo() const;
};

/// Applies one "key = value" setting. Unknown keys are errors.
void apply_setting(RunConfig& config, const std::string& key, const std::string& value);

/// Parses a flat key-value file; '#' starts a comment.
RunConfig load_config(const std::string& path);

/// Range checks that must pass before any computation starts.
/// require_input: the command reads a series.
std::vector<std::string> validate_config(const RunConfig& config, bool require_input);

struct CommandResult {
  std::vector<std::string> files;  // written, in order
  std::vector<std::string> warnings;
};

/// spectrum.csv, reconstruction.csv, solve_report.json
CommandResult cmd_solve(const RunConfig& config);
/// eval_report.json, replicates.csv
CommandResult cmd_eval(const RunConfig& config);
/// kernel.csv
CommandResult cmd_kernel(const RunConfig& config);
/// transform.csv: unnormalized forward transform of the raw values.
CommandResult cmd_transform(const RunConfig& config);

/// Full command line: `ingap solve|eval|kernel|transform --config <path> ...`.
/// Returns 0 on success, 1 on numerical failure, 2 on usage or I/O errors.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ingap
