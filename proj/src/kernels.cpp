#include "ingap/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "ingap/series.hpp"

namespace ingap {

const char* to_string(KernelFamily family) {
  switch (family) {
    case KernelFamily::Fejer: return "fejer";
    case KernelFamily::Sobolev: return "sobolev";
    case KernelFamily::Flat: return "flat";
  }
  return "unknown";
}

KernelFamily kernel_family_from_string(const std::string& name) {
  if (name == "fejer") return KernelFamily::Fejer;
  if (name == "sobolev") return KernelFamily::Sobolev;
  if (name == "flat") return KernelFamily::Flat;
  throw InvalidArgument("unknown kernel family '" + name + "' (expected fejer, sobolev or flat)");
}

namespace {

// Normalizes raw weights to unit L1 norm, then applies the floor. Returns c.
double normalize(std::vector<double>& w) {
  double sum = 0.0;
  for (double v : w) sum += v;
  if (!(sum > 0.0) || !std::isfinite(sum)) throw NumericalError("kernel weights do not sum to a positive value");
  const double c = 1.0 / sum;
  for (double& v : w) v = std::max(v * c, kWeightFloor);
  return c;
}

}  // namespace

double WeightKernel::weight(long k) const {
  const long i = k + static_cast<long>(weights.size() / 2);
  if (i < 0 || i >= static_cast<long>(weights.size())) throw InvalidArgument("kernel index out of range");
  return weights[static_cast<std::size_t>(i)];
}

WeightKernel WeightKernel::floored(double floor) const {
  WeightKernel out = *this;
  for (double& v : out.weights) v = std::max(v, floor);
  out.norm_constant *= normalize(out.weights);
  return out;
}

WeightKernel fejer_kernel(std::size_t n_coeffs) {
  require_even_coeffs(n_coeffs);
  const double n = static_cast<double>(n_coeffs);
  const long half = static_cast<long>(n_coeffs / 2);
  std::vector<double> w(n_coeffs);
  // On the grid x = k/N the numerator sin(N pi x / 2) = sin(pi k / 2) is
  // exactly 0 or +-1 and the prefactor vanishes at k = -N/2.
  for (long k = -half; k < half; ++k) {
    const double x = static_cast<double>(k) / n;
    const double prefactor = k == -half ? 0.0 : 4.0 * std::abs(std::cos(std::numbers::pi * x)) / (n * n);
    double ratio = n / 2.0;
    if (k != 0) ratio = (k % 2 == 0) ? 0.0 : 1.0 / std::sin(std::numbers::pi * x);
    w[static_cast<std::size_t>(k + half)] = prefactor * ratio * ratio;
  }
  WeightKernel kernel;
  kernel.family = KernelFamily::Fejer;
  kernel.params = SobolevParams{1.0, 2, 0.0};
  kernel.norm_constant = normalize(w);
  kernel.weights = std::move(w);
  return kernel;
}

double sobolev_weight_fn(double z, double alpha, int beta, double gamma) {
  if (!(gamma > 0.0)) throw InvalidArgument("Sobolev gamma must be positive");
  if (!(alpha > 0.0)) throw InvalidArgument("Sobolev alpha must be positive");
  if (beta < 1) throw InvalidArgument("Sobolev beta must be a positive integer");
  const double taper = std::max(0.25 - z * z, 0.0);
  return std::pow(taper, beta) / (gamma + std::pow(std::abs(z), 2.0 * alpha));
}

WeightKernel sobolev_kernel(std::size_t n_coeffs, const SobolevParams& params) {
  require_even_coeffs(n_coeffs);
  const long half = static_cast<long>(n_coeffs / 2);
  std::vector<double> w(n_coeffs);
  for (long k = -half; k < half; ++k) {
    const double z = static_cast<double>(k) / static_cast<double>(n_coeffs);
    w[static_cast<std::size_t>(k + half)] = sobolev_weight_fn(z, params.alpha, params.beta, params.gamma);
  }
  WeightKernel kernel;
  kernel.family = KernelFamily::Sobolev;
  kernel.params = params;
  kernel.norm_constant = normalize(w);
  kernel.weights = std::move(w);
  return kernel;
}

double high_freq_attenuation(const WeightKernel& kernel) {
  const long top = static_cast<long>(kernel.size() / 2) - 1;
  return kernel.weight(top) / kernel.weight(0);
}

WeightKernel flat_kernel(std::size_t n_coeffs) {
  require_even_coeffs(n_coeffs);
  WeightKernel kernel;
  kernel.family = KernelFamily::Flat;
  kernel.weights.assign(n_coeffs, 1.0);
  kernel.norm_constant = normalize(kernel.weights);
  return kernel;
}

}  // namespace ingap
