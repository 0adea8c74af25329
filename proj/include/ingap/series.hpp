#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ingap {

using cplx = std::complex<double>;

/// Thrown for malformed inputs: bad node ranges, odd coefficient counts, bad config values.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Operand sizes that do not agree.
class DimensionError : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

/// A solve or factorization that could not produce a trustworthy result.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Affine map between raw timestamps (seconds) and nodes in [-1/2, 1/2).
struct NodeMapping {
  double t_min = 0.0;
  double span = 1.0;  // t_max - t_min + median sampling interval

  double to_node(double t) const { return (t - t_min) / span - 0.5; }
  double to_time(double x) const { return (x + 0.5) * span + t_min; }
};

/// Maps raw timestamps onto [-1/2, 1/2). The span is padded by the median
/// sampling interval so that the last sample lands strictly below 1/2.
NodeMapping make_node_mapping(const std::vector<double>& timestamps);

/// Irregularly sampled real series on the unit torus [-1/2, 1/2).
class SampledSeries {
 public:
  SampledSeries(std::vector<double> nodes, std::vector<double> values,
                std::optional<std::vector<double>> origin_timestamps = std::nullopt,
                std::optional<NodeMapping> mapping = std::nullopt);

  /// Build from raw timestamps, normalizing with make_node_mapping.
  static SampledSeries from_timestamps(std::vector<double> timestamps, std::vector<double> values);

  std::size_t size() const { return nodes_.size(); }
  const std::vector<double>& nodes() const { return nodes_; }
  const std::vector<double>& values() const { return values_; }
  const std::optional<std::vector<double>>& origin_timestamps() const { return origin_; }
  const std::optional<NodeMapping>& mapping() const { return mapping_; }

  /// True when consecutive nodes are 1/M apart within 1e-9, i.e. the nodes are a
  /// (shifted) copy of the grid j/M.
  bool equispaced() const { return equispaced_; }

  /// Subset by sorted indices; mapping and timestamps follow.
  SampledSeries subset(const std::vector<std::size_t>& indices) const;

  /// Same nodes, new values.
  SampledSeries with_values(std::vector<double> values) const;

  double mean() const;

 private:
  std::vector<double> nodes_;
  std::vector<double> values_;
  std::optional<std::vector<double>> origin_;
  std::optional<NodeMapping> mapping_;
  bool equispaced_ = false;
};

/// Checks that nodes are strictly increasing and every node lies in [-1/2, 1/2).
void validate_nodes(const std::vector<double>& nodes);

/// Fourier coefficients on the integer grid k = -N/2 ... N/2-1.
class Spectrum {
 public:
  Spectrum() = default;
  explicit Spectrum(std::vector<cplx> coeffs);

  std::size_t size() const { return coeffs_.size(); }
  const std::vector<cplx>& coeffs() const { return coeffs_; }
  std::vector<cplx>& coeffs() { return coeffs_; }

  /// Lowest frequency index, -N/2.
  long k_min() const { return -static_cast<long>(coeffs_.size() / 2); }
  long frequency(std::size_t i) const { return k_min() + static_cast<long>(i); }

  /// Coefficient at signed frequency k.
  const cplx& at(long k) const;

 private:
  std::vector<cplx> coeffs_;
};

/// Integer frequency grid -N/2 ... N/2-1 as doubles.
std::vector<double> frequency_grid(std::size_t n_coeffs);

/// Throws InvalidArgument unless n is even and at least 2.
void require_even_coeffs(std::size_t n);

}  // namespace ingap
