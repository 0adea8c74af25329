#include "ingap/series.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace ingap {

namespace {

bool detect_equispaced(const std::vector<double>& nodes) {
  const std::size_t m = nodes.size();
  if (m < 2) return false;
  const double step = 1.0 / static_cast<double>(m);
  for (std::size_t j = 1; j < m; ++j) {
    if (std::abs(nodes[j] - nodes[j - 1] - step) > 1e-9) return false;
  }
  return true;
}

}  // namespace

NodeMapping make_node_mapping(const std::vector<double>& timestamps) {
  if (timestamps.empty()) throw InvalidArgument("make_node_mapping: no timestamps");
  const auto [lo, hi] = std::minmax_element(timestamps.begin(), timestamps.end());
  std::vector<double> sorted(timestamps);
  std::sort(sorted.begin(), sorted.end());
  std::vector<double> gaps;
  gaps.reserve(sorted.size());
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    if (sorted[i] > sorted[i - 1]) gaps.push_back(sorted[i] - sorted[i - 1]);
  }
  double delta = 1.0;
  if (!gaps.empty()) {
    auto mid = gaps.begin() + static_cast<std::ptrdiff_t>(gaps.size() / 2);
    std::nth_element(gaps.begin(), mid, gaps.end());
    delta = *mid;
    if (gaps.size() % 2 == 0) {
      const double below = *std::max_element(gaps.begin(), mid);
      delta = 0.5 * (delta + below);
    }
  }
  return NodeMapping{*lo, (*hi - *lo) + delta};
}

void validate_nodes(const std::vector<double>& nodes) {
  if (nodes.empty()) throw InvalidArgument("series has no nodes");
  for (std::size_t j = 0; j < nodes.size(); ++j) {
    const double x = nodes[j];
    if (!std::isfinite(x) || x < -0.5 || x >= 0.5) {
      throw InvalidArgument("node " + std::to_string(j) + " = " + std::to_string(x) +
                            " outside [-1/2, 1/2)");
    }
    if (j > 0 && !(x > nodes[j - 1])) {
      throw InvalidArgument("nodes must be strictly increasing (index " + std::to_string(j) + ")");
    }
  }
}

SampledSeries::SampledSeries(std::vector<double> nodes, std::vector<double> values,
                             std::optional<std::vector<double>> origin_timestamps,
                             std::optional<NodeMapping> mapping)
    : nodes_(std::move(nodes)),
      values_(std::move(values)),
      origin_(std::move(origin_timestamps)),
      mapping_(mapping) {
  validate_nodes(nodes_);
  if (values_.size() != nodes_.size()) {
    throw DimensionError("series: " + std::to_string(nodes_.size()) + " nodes but " +
                         std::to_string(values_.size()) + " values");
  }
  for (double v : values_) {
    if (!std::isfinite(v)) throw InvalidArgument("series values must be finite");
  }
  if (origin_ && origin_->size() != nodes_.size()) {
    throw DimensionError("series: timestamp count does not match node count");
  }
  equispaced_ = detect_equispaced(nodes_);
}

SampledSeries SampledSeries::from_timestamps(std::vector<double> timestamps, std::vector<double> values) {
  const NodeMapping map = make_node_mapping(timestamps);
  std::vector<double> nodes(timestamps.size());
  std::transform(timestamps.begin(), timestamps.end(), nodes.begin(),
                 [&](double t) { return map.to_node(t); });
  return SampledSeries(std::move(nodes), std::move(values), std::move(timestamps), map);
}

SampledSeries SampledSeries::subset(const std::vector<std::size_t>& indices) const {
  std::vector<double> x, v, t;
  x.reserve(indices.size());
  v.reserve(indices.size());
  for (std::size_t i : indices) {
    if (i >= size()) throw DimensionError("subset index out of range");
    x.push_back(nodes_[i]);
    v.push_back(values_[i]);
    if (origin_) t.push_back((*origin_)[i]);
  }
  std::optional<std::vector<double>> ts;
  if (origin_) ts = std::move(t);
  return SampledSeries(std::move(x), std::move(v), std::move(ts), mapping_);
}

SampledSeries SampledSeries::with_values(std::vector<double> values) const {
  return SampledSeries(nodes_, std::move(values), origin_, mapping_);
}

double SampledSeries::mean() const {
  // Neumaier summation keeps the centring offset independent of sample order.
  double sum = 0.0, comp = 0.0;
  for (double v : values_) {
    const double t = sum + v;
    comp += std::abs(sum) >= std::abs(v) ? (sum - t) + v : (v - t) + sum;
    sum = t;
  }
  return (sum + comp) / static_cast<double>(values_.size());
}

void require_even_coeffs(std::size_t n) {
  if (n < 2 || n % 2 != 0) {
    throw InvalidArgument("number of Fourier coefficients must be even and >= 2 (got " +
                          std::to_string(n) + ")");
  }
}

Spectrum::Spectrum(std::vector<cplx> coeffs) : coeffs_(std::move(coeffs)) {
  require_even_coeffs(coeffs_.size());
}

const cplx& Spectrum::at(long k) const {
  const long i = k - k_min();
  if (i < 0 || i >= static_cast<long>(coeffs_.size())) {
    throw InvalidArgument("frequency " + std::to_string(k) + " outside spectrum");
  }
  return coeffs_[static_cast<std::size_t>(i)];
}

std::vector<double> frequency_grid(std::size_t n_coeffs) {
  std::vector<double> k(n_coeffs);
  const long lo = -static_cast<long>(n_coeffs / 2);
  for (std::size_t i = 0; i < n_coeffs; ++i) k[i] = static_cast<double>(lo + static_cast<long>(i));
  return k;
}

}  // namespace ingap
