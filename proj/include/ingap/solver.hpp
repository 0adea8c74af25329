#pragma once

#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ingap/kernels.hpp"
#include "ingap/series.hpp"
#include "ingap/spectral_core.hpp"

namespace ingap {

enum class SolveMethod { EquispacedClosedForm, KailathLU, DenseOracle, TruncatedIfft };

const char* to_string(SolveMethod method);

struct SolveOptions {
  /// Subtract the sample mean before solving; reconstructions add it back.
  bool centre = true;
  double stationarity_tolerance = 1e-8;
  /// Condition estimate of the inner Kailath matrix above which the dense path is used.
  double condition_limit = 1e12;
};

/// Spectrum of the regularized interpolation problem plus solve diagnostics.
struct InterpSolution {
  Spectrum spectrum;
  double offset = 0.0;
  double cost = 0.0;
  double stationarity_residual = 0.0;
  double condition_estimate = 1.0;
  SolveMethod method = SolveMethod::KailathLU;
  std::vector<std::string> warnings;

  /// Adjoint evaluation at arbitrary nodes, offset restored.
  std::vector<cplx> reconstruct_complex(std::span<const double> nodes) const;
  /// Real part of reconstruct_complex.
  std::vector<double> reconstruct(std::span<const double> nodes) const;
};

/// Partial-pivoting LU of a Gram matrix: P G = L U.
struct GramFactors {
  Eigen::MatrixXcd lower;
  Eigen::MatrixXcd upper;
  Eigen::PermutationMatrix<Eigen::Dynamic, Eigen::Dynamic> permutation;

  /// P^T L U.
  Eigen::MatrixXcd reconstruct() const;
};

GramFactors factor_gram(const Eigen::MatrixXcd& gram);

/// f^H W^-1 f + ||A^H f - y||^2 with y the series values as given.
double cost(const Spectrum& spectrum, const SampledSeries& series, const TransformMatrix& a,
            const WeightKernel& kernel);

/// 2 W^-1 f + 2 G f - 2 A y, the gradient of cost() with respect to conj(f)
/// scaled so that Re/Im parts match the partials along Re(f)/Im(f).
std::vector<cplx> cost_gradient(const Spectrum& spectrum, const SampledSeries& series,
                                const TransformMatrix& a, const WeightKernel& kernel);

/// Closed form f_k = (A y)_k w_k / (M w_k + 1). Requires 1/M-spaced nodes and N <= M.
InterpSolution solve_equispaced(const SampledSeries& series, const WeightKernel& kernel,
                                std::size_t n_coeffs, const SolveOptions& options = {});

/// LU factors of the Gram matrix substituted into the Kailath expansion:
/// f = (W - W Y (I + U W Y)^-1 U W) A y, with Y = P^T L.
InterpSolution solve_general(const SampledSeries& series, const WeightKernel& kernel,
                             std::size_t n_coeffs, const SolveOptions& options = {});

/// Dense solve of (I + W G) f = W A y. Used as the conditioning fallback.
InterpSolution solve_dense(const SampledSeries& series, const WeightKernel& kernel,
                           std::size_t n_coeffs, const SolveOptions& options = {});

/// Closed form when the nodes allow it, the Kailath path otherwise.
InterpSolution solve(const SampledSeries& series, const WeightKernel& kernel, std::size_t n_coeffs,
                     const SolveOptions& options = {});

struct Residual {
  double value = 0.0;
  bool relative = true;  // false when ||W A y|| was zero and value is absolute
};

/// ||f + W G f - W A y|| / ||W A y||, with y the series values minus solution.offset.
Residual stationarity_residual(const InterpSolution& solution, const SampledSeries& series,
                               const TransformMatrix& a, const WeightKernel& kernel);

/// Minimum eigenvalue of I + W^1/2 G W^1/2, the regularized Hessian in the
/// W-scaled metric. Always >= 1 in exact arithmetic.
double curvature_check(const SampledSeries& series, const WeightKernel& kernel, std::size_t n_coeffs);

/// All eigenvalues (ascending) of the matrix used by curvature_check.
Eigen::VectorXd curvature_spectrum(const SampledSeries& series, const WeightKernel& kernel,
                                   std::size_t n_coeffs);

/// Equispaced grid -1/2 + i/size, i = 0 ... size-1.
struct NominalGrid {
  std::size_t size = 0;
  std::vector<double> nodes() const;
};

/// Grid whose spacing matches the median node spacing of the series.
NominalGrid nominal_grid_for(const SampledSeries& series);

/// Truncated-DFT baseline: observations snapped to the nominal grid, empty
/// slots zero after centring, then the closed-form weighting of solve_equispaced.
InterpSolution ifft_baseline(const SampledSeries& series, const WeightKernel& kernel,
                             std::size_t n_coeffs, const NominalGrid& grid,
                             const SolveOptions& options = {});

}  // namespace ingap
