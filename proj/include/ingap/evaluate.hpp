#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ingap/kernels.hpp"
#include "ingap/series.hpp"
#include "ingap/solver.hpp"

namespace ingap {

enum class MaskMode { Random, ContiguousBlock };

const char* to_string(MaskMode mode);
MaskMode mask_mode_from_string(const std::string& name);

struct MaskSpec {
  MaskMode mode = MaskMode::Random;
  double fraction = 0.1;
  std::uint64_t seed = 0;
};

struct Split {
  SampledSeries train;
  SampledSeries test;
  std::vector<std::size_t> train_indices;
  std::vector<std::size_t> test_indices;
};

/// Removes round(fraction * M) observations, scattered (Random) or as one
/// run starting at a seeded-uniform index (ContiguousBlock).
Split apply_mask(const SampledSeries& series, const MaskSpec& spec);

struct MafeResult {
  double value = 0.0;
  std::size_t excluded = 0;  // observations equal to zero, skipped
};

/// Mean absolute fractional error (1/M) sum |(pred - obs) / obs|.
MafeResult mafe(std::span<const double> predicted, std::span<const double> observed);

/// Pearson correlation coefficient.
double correlation(std::span<const double> a, std::span<const double> b);

/// 1 - ||pred - obs|| / ||obs - mean(obs)||; reported as the (1 - Err) score.
double relative_error(std::span<const double> predicted, std::span<const double> observed);

struct PermutationResult {
  double p_value = 1.0;
  bool degenerate = false;  // zero-variance deltas
};

/// One-sided paired sign-flip test on the t statistic of the deltas,
/// p = (1 + #{t_perm >= t_obs}) / (permutations + 1).
PermutationResult permutation_test(std::span<const double> deltas, int permutations, std::uint64_t seed = 0);

struct MethodMetrics {
  double mafe = 0.0;
  double correlation = 0.0;
  double relative_error = 0.0;
};

struct ReplicateResult {
  bool ok = true;
  std::string error;
  std::uint64_t seed = 0;
  MethodMetrics inverse;   // iNFFT
  MethodMetrics baseline;  // truncated iFFT
  std::size_t mafe_excluded = 0;
};

struct MetricSummary {
  double mean = 0.0;
  double stddev = 0.0;
};

struct MethodSummary {
  MetricSummary mafe, correlation, relative_error;
};

/// One (mode, fraction) cell of the validation grid.
struct EvalReport {
  MaskMode mode = MaskMode::Random;
  double fraction = 0.0;
  int replicates = 0;
  int permutations = 0;
  std::vector<ReplicateResult> per_replicate;
  MethodSummary inverse, baseline;
  // Directional on iNFFT being better: correlation and relative_error test
  // inverse - baseline, mafe tests baseline - inverse.
  double p_correlation = 1.0;
  double p_relative_error = 1.0;
  double p_mafe = 1.0;
  std::vector<std::string> warnings;
};

struct ProtocolConfig {
  std::size_t n_coeffs = 1024;
  WeightKernel kernel;
  std::vector<double> fractions{0.1, 0.2, 0.3};
  std::vector<MaskMode> modes{MaskMode::Random, MaskMode::ContiguousBlock};
  int replicates = 7;
  int permutations = 10000;
  std::uint64_t seed = 0;
  SolveOptions solve;
};

struct ProtocolReport {
  std::vector<EvalReport> cells;  // mode-major, then fraction
  std::vector<std::string> warnings;
};

/// Cross-validation of the iNFFT against the truncated iFFT baseline over every
/// (mode, fraction) pair.
ProtocolReport run_protocol(const SampledSeries& series, const ProtocolConfig& config);

/// Mean (compensated sum) and sample standard deviation; 0 for fewer than 2 values.
MetricSummary summarize(std::span<const double> values);

/// splitmix64 finalizer, used to derive independent seeds.
std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b);

}  // namespace ingap
