#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace ingap {

enum class KernelFamily { Fejer, Sobolev, Flat };

const char* to_string(KernelFamily family);
KernelFamily kernel_family_from_string(const std::string& name);

struct SobolevParams {
  double alpha = 1.0;
  int beta = 2;
  double gamma = 1e-2;
};

/// Smallest admissible weight; keeps the diagonal regularizer strictly positive.
inline constexpr double kWeightFloor = 1e-300;

/// Positive frequency weights (the diagonal of W-hat), L1-normalized and
/// indexed k = -N/2 ... N/2-1.
struct WeightKernel {
  std::vector<double> weights;
  KernelFamily family = KernelFamily::Sobolev;
  SobolevParams params;  // beta is the kernel order; alpha and gamma are unused for Fejer
  double norm_constant = 1.0;

  std::size_t size() const { return weights.size(); }
  double weight(long k) const;

  /// Copy with every weight raised to at least floor and renormalized.
  WeightKernel floored(double floor) const;
};

/// |B_{2,N}(k/N)| with the k = 0 singularity filled by its limit, L1-normalized.
WeightKernel fejer_kernel(std::size_t n_coeffs);

/// c (1/4 - z^2)^beta / (gamma + |z|^(2 alpha)) with c = 1.
double sobolev_weight_fn(double z, double alpha, int beta, double gamma);

/// sobolev_weight_fn on z = k/N, scaled by c = 1 / sum_k g(k/N).
WeightKernel sobolev_kernel(std::size_t n_coeffs, const SobolevParams& params = {});

/// weight(N/2 - 1) / weight(0).
double high_freq_attenuation(const WeightKernel& kernel);

/// Every weight equal to 1/N. Mostly useful as a test fixture.
WeightKernel flat_kernel(std::size_t n_coeffs);

}  // namespace ingap
