#include "ingap/spectral_core.hpp"

#include <cmath>
#include <string>

#include "ingap/ndft.hpp"

namespace ingap {

const char* to_string(TransformKind kind) {
  switch (kind) {
    case TransformKind::TypeI: return "TypeI";
    case TransformKind::TypeII: return "TypeII";
    case TransformKind::TypeIII: return "TypeIII";
  }
  return "unknown";
}

namespace {

void require_freq_nodes(std::span<const double> freqs) {
  if (freqs.empty()) throw InvalidArgument("no frequency nodes");
  for (double f : freqs) {
    if (!std::isfinite(f)) throw InvalidArgument("frequency nodes must be finite");
  }
}

std::vector<double> checked_nodes(std::span<const double> nodes) {
  std::vector<double> x(nodes.begin(), nodes.end());
  validate_nodes(x);
  return x;
}

}  // namespace

TransformMatrix::TransformMatrix(TransformKind kind, std::vector<double> time_nodes,
                                 std::vector<double> freq_nodes)
    : kind_(kind), time_(std::move(time_nodes)), freq_(std::move(freq_nodes)) {
  entries_ = ndft::omp::phase_matrix(time_, freq_);
}

std::vector<double> equispaced_nodes(std::size_t m) {
  std::vector<double> x(m);
  const long lo = -static_cast<long>(m / 2);
  for (std::size_t j = 0; j < m; ++j)
    x[j] = static_cast<double>(lo + static_cast<long>(j)) / static_cast<double>(m);
  return x;
}

TransformMatrix build_type1(std::span<const double> nodes, std::size_t n_coeffs) {
  require_even_coeffs(n_coeffs);
  return TransformMatrix(TransformKind::TypeI, checked_nodes(nodes), frequency_grid(n_coeffs));
}

TransformMatrix build_type2(std::size_t m_rows, std::span<const double> freq_nodes) {
  if (m_rows == 0) throw InvalidArgument("build_type2: no time nodes");
  require_freq_nodes(freq_nodes);
  return TransformMatrix(TransformKind::TypeII, equispaced_nodes(m_rows),
                         std::vector<double>(freq_nodes.begin(), freq_nodes.end()));
}

TransformMatrix build_type3(std::span<const double> nodes, std::span<const double> freq_nodes) {
  require_freq_nodes(freq_nodes);
  return TransformMatrix(TransformKind::TypeIII, checked_nodes(nodes),
                         std::vector<double>(freq_nodes.begin(), freq_nodes.end()));
}

Spectrum forward(const TransformMatrix& a, std::span<const cplx> values) {
  if (values.size() != a.m_rows()) {
    throw DimensionError("forward: " + std::to_string(values.size()) + " values for " +
                         std::to_string(a.m_rows()) + " rows");
  }
  return Spectrum(ndft::omp::apply_forward(a.entries(), values));
}

Spectrum forward(const TransformMatrix& a, std::span<const double> values) {
  const auto v = ndft::to_complex(values);
  return forward(a, std::span<const cplx>(v));
}

std::vector<cplx> adjoint(const TransformMatrix& a, std::span<const cplx> coeffs) {
  if (coeffs.size() != a.n_cols()) {
    throw DimensionError("adjoint: " + std::to_string(coeffs.size()) + " coefficients for " +
                         std::to_string(a.n_cols()) + " columns");
  }
  return ndft::omp::apply_adjoint(a.entries(), coeffs);
}

std::vector<cplx> adjoint(const TransformMatrix& a, const Spectrum& spectrum) {
  return adjoint(a, std::span<const cplx>(spectrum.coeffs()));
}

Eigen::MatrixXcd gram(const TransformMatrix& a) {
  if (a.kind() == TransformKind::TypeI) return ndft::gram_type1(a.time_nodes(), a.n_cols());
  return ndft::omp::gram_product(a.entries());
}

Spectrum dft_reference(std::span<const cplx> values) {
  const std::size_t m = values.size();
  require_even_coeffs(m);
  const auto grid = equispaced_nodes(m);
  const auto k = frequency_grid(m);
  return Spectrum(ndft::serial::forward(grid, k, values));
}

std::vector<cplx> idft_reference(const Spectrum& spectrum) {
  const std::size_t m = spectrum.size();
  const auto grid = equispaced_nodes(m);
  const auto k = frequency_grid(m);
  auto out = ndft::serial::synthesize(grid, k, spectrum.coeffs());
  for (auto& v : out) v /= static_cast<double>(m);
  return out;
}

}  // namespace ingap
