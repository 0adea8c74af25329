#include "ingap/ndft.hpp"

namespace ingap::ndft {

std::vector<cplx> to_complex(std::span<const double> v) { return {v.begin(), v.end()}; }

namespace serial {

Eigen::MatrixXcd phase_matrix(std::span<const double> time, std::span<const double> freqs) {
  const auto m = static_cast<Eigen::Index>(time.size());
  const auto n = static_cast<Eigen::Index>(freqs.size());
  Eigen::MatrixXcd e(m, n);
  for (Eigen::Index k = 0; k < n; ++k)
    for (Eigen::Index j = 0; j < m; ++j) e(j, k) = phase(freqs[k], time[j]);
  return e;
}

std::vector<cplx> apply_forward(const Eigen::MatrixXcd& e, std::span<const cplx> v) {
  std::vector<cplx> out(static_cast<std::size_t>(e.cols()));
  for (Eigen::Index k = 0; k < e.cols(); ++k) {
    cplx acc = 0.0;
    for (Eigen::Index j = 0; j < e.rows(); ++j) acc += e(j, k) * v[j];
    out[k] = acc;
  }
  return out;
}

std::vector<cplx> apply_adjoint(const Eigen::MatrixXcd& e, std::span<const cplx> c) {
  std::vector<cplx> out(static_cast<std::size_t>(e.rows()));
  for (Eigen::Index j = 0; j < e.rows(); ++j) {
    cplx acc = 0.0;
    for (Eigen::Index k = 0; k < e.cols(); ++k) acc += std::conj(e(j, k)) * c[k];
    out[j] = acc;
  }
  return out;
}

Eigen::MatrixXcd gram_product(const Eigen::MatrixXcd& e) {
  const Eigen::Index n = e.cols();
  Eigen::MatrixXcd g(n, n);
  for (Eigen::Index l = 0; l < n; ++l) {
    for (Eigen::Index k = 0; k < n; ++k) {
      cplx acc = 0.0;
      for (Eigen::Index j = 0; j < e.rows(); ++j) acc += e(j, k) * std::conj(e(j, l));
      g(k, l) = acc;
    }
  }
  return g;
}

std::vector<cplx> toeplitz_moments(std::span<const double> time, std::size_t n) {
  std::vector<cplx> t(n);
  for (std::size_t d = 0; d < n; ++d) {
    cplx acc = 0.0;
    for (double x : time) acc += phase(static_cast<double>(d), x);
    t[d] = acc;
  }
  return t;
}

Eigen::MatrixXcd toeplitz_from_moments(const std::vector<cplx>& moments) {
  const auto n = static_cast<Eigen::Index>(moments.size());
  Eigen::MatrixXcd g(n, n);
  for (Eigen::Index b = 0; b < n; ++b)
    for (Eigen::Index a = 0; a < n; ++a)
      g(a, b) = a >= b ? moments[a - b] : std::conj(moments[b - a]);
  return g;
}

std::vector<cplx> forward(std::span<const double> time, std::span<const double> freqs,
                          std::span<const cplx> v) {
  std::vector<cplx> out(freqs.size());
  for (std::size_t k = 0; k < freqs.size(); ++k) {
    cplx acc = 0.0;
    for (std::size_t j = 0; j < time.size(); ++j) acc += phase(freqs[k], time[j]) * v[j];
    out[k] = acc;
  }
  return out;
}

std::vector<cplx> synthesize(std::span<const double> time, std::span<const double> freqs,
                             std::span<const cplx> c) {
  std::vector<cplx> out(time.size());
  for (std::size_t j = 0; j < time.size(); ++j) {
    cplx acc = 0.0;
    for (std::size_t k = 0; k < freqs.size(); ++k) acc += std::conj(phase(freqs[k], time[j])) * c[k];
    out[j] = acc;
  }
  return out;
}

}  // namespace serial
}  // namespace ingap::ndft
