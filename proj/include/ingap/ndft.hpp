#pragma once

// Dense NDFT loops. Every kernel exists twice: a plain serial loop kept as the
// reference, and an OpenMP version that partitions the same per-element loops
// across threads. Each output element is reduced by one thread in a fixed
// order, so both versions are bit-identical for any thread count.

#include <cmath>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "ingap/series.hpp"

namespace ingap::ndft {

/// exp(-2 pi i f x), with f*x reduced modulo 1 before the trig evaluation.
inline cplx phase(double f, double x) {
  double p = f * x;
  p -= std::round(p);
  constexpr double two_pi = 6.283185307179586476925286766559;
  return std::polar(1.0, -two_pi * p);
}

namespace serial {

/// out(j, k) = exp(-2 pi i freqs_k time_j); rows are time nodes.
Eigen::MatrixXcd phase_matrix(std::span<const double> time, std::span<const double> freqs);
/// out_k = sum_j E(j, k) v_j
std::vector<cplx> apply_forward(const Eigen::MatrixXcd& e, std::span<const cplx> v);
/// out_j = sum_k conj(E(j, k)) c_k
std::vector<cplx> apply_adjoint(const Eigen::MatrixXcd& e, std::span<const cplx> c);
/// G(k, l) = sum_j E(j, k) conj(E(j, l))
Eigen::MatrixXcd gram_product(const Eigen::MatrixXcd& e);
/// t_d = sum_j exp(-2 pi i d x_j) for d = 0 ... n-1.
std::vector<cplx> toeplitz_moments(std::span<const double> time, std::size_t n);
/// Hermitian Toeplitz G(a, b) = t_{a-b}, with t_{-d} = conj(t_d).
Eigen::MatrixXcd toeplitz_from_moments(const std::vector<cplx>& moments);
/// Matrix-free forward: out_k = sum_j v_j exp(-2 pi i f_k x_j)
std::vector<cplx> forward(std::span<const double> time, std::span<const double> freqs,
                          std::span<const cplx> v);
/// Matrix-free adjoint: out_j = sum_k c_k exp(+2 pi i f_k x_j)
std::vector<cplx> synthesize(std::span<const double> time, std::span<const double> freqs,
                             std::span<const cplx> c);

}  // namespace serial

namespace omp {

/// out(j, k) = exp(-2 pi i freqs_k time_j); rows are time nodes.
Eigen::MatrixXcd phase_matrix(std::span<const double> time, std::span<const double> freqs);
/// out_k = sum_j E(j, k) v_j
std::vector<cplx> apply_forward(const Eigen::MatrixXcd& e, std::span<const cplx> v);
/// out_j = sum_k conj(E(j, k)) c_k
std::vector<cplx> apply_adjoint(const Eigen::MatrixXcd& e, std::span<const cplx> c);
/// G(k, l) = sum_j E(j, k) conj(E(j, l))
Eigen::MatrixXcd gram_product(const Eigen::MatrixXcd& e);
/// t_d = sum_j exp(-2 pi i d x_j) for d = 0 ... n-1.
std::vector<cplx> toeplitz_moments(std::span<const double> time, std::size_t n);
/// Hermitian Toeplitz G(a, b) = t_{a-b}, with t_{-d} = conj(t_d).
Eigen::MatrixXcd toeplitz_from_moments(const std::vector<cplx>& moments);
/// Matrix-free forward: out_k = sum_j v_j exp(-2 pi i f_k x_j)
std::vector<cplx> forward(std::span<const double> time, std::span<const double> freqs,
                          std::span<const cplx> v);
/// Matrix-free adjoint: out_j = sum_k c_k exp(+2 pi i f_k x_j)
std::vector<cplx> synthesize(std::span<const double> time, std::span<const double> freqs,
                             std::span<const cplx> c);

}  // namespace omp

/// Gram matrix of a type-I matrix on the integer grid, through Toeplitz moments (O(MN)).
inline Eigen::MatrixXcd gram_type1(std::span<const double> time, std::size_t n) {
  return omp::toeplitz_from_moments(omp::toeplitz_moments(time, n));
}

std::vector<cplx> to_complex(std::span<const double> v);

}  // namespace ingap::ndft
