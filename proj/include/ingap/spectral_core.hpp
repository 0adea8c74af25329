#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "ingap/series.hpp"

namespace ingap {

enum class TransformKind { TypeI, TypeII, TypeIII };

const char* to_string(TransformKind kind);

/// Dense M x N NDFT matrix with entries exp(-2 pi i f_k x_j).
///
/// Rows follow the time nodes, columns the frequency nodes. The forward
/// transform contracts over rows, the adjoint over columns.
class TransformMatrix {
 public:
  TransformMatrix(TransformKind kind, std::vector<double> time_nodes, std::vector<double> freq_nodes);

  TransformKind kind() const { return kind_; }
  std::size_t m_rows() const { return time_.size(); }
  std::size_t n_cols() const { return freq_.size(); }
  const Eigen::MatrixXcd& entries() const { return entries_; }
  const std::vector<double>& time_nodes() const { return time_; }
  const std::vector<double>& freq_nodes() const { return freq_; }

 private:
  TransformKind kind_;
  std::vector<double> time_;
  std::vector<double> freq_;
  Eigen::MatrixXcd entries_;
};

/// Irregular time nodes, integer frequencies -N/2 ... N/2-1.
TransformMatrix build_type1(std::span<const double> nodes, std::size_t n_coeffs);

/// Equispaced time nodes j/M (j = -M/2 ... ), arbitrary frequency nodes.
TransformMatrix build_type2(std::size_t m_rows, std::span<const double> freq_nodes);

/// Both axes irregular.
TransformMatrix build_type3(std::span<const double> nodes, std::span<const double> freq_nodes);

/// Equispaced grid j/M, j = -floor(M/2) ... M - floor(M/2) - 1.
std::vector<double> equispaced_nodes(std::size_t m);

/// coeffs_k = sum_j values_j exp(-2 pi i k x_j). No normalization.
Spectrum forward(const TransformMatrix& a, std::span<const double> values);
Spectrum forward(const TransformMatrix& a, std::span<const cplx> values);

/// out_j = sum_k coeffs_k exp(+2 pi i k x_j). No 1/M factor.
std::vector<cplx> adjoint(const TransformMatrix& a, const Spectrum& spectrum);
std::vector<cplx> adjoint(const TransformMatrix& a, std::span<const cplx> coeffs);

/// N x N product of the forward matrix with its Hermitian, acting on spectra.
/// Type-I matrices use the Toeplitz structure of the integer grid.
Eigen::MatrixXcd gram(const TransformMatrix& a);

/// Direct evaluation of the equispaced DFT, h_k = sum_j f_j exp(-2 pi i k j / M), M = N.
Spectrum dft_reference(std::span<const cplx> values);
/// Inverse of dft_reference including the 1/M factor.
std::vector<cplx> idft_reference(const Spectrum& spectrum);

}  // namespace ingap
