#include "ingap/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "ingap/ndft.hpp"

namespace ingap {

const char* to_string(SolveMethod method) {
  switch (method) {
    case SolveMethod::EquispacedClosedForm: return "EquispacedClosedForm";
    case SolveMethod::KailathLU: return "KailathLU";
    case SolveMethod::DenseOracle: return "DenseOracle";
    case SolveMethod::TruncatedIfft: return "TruncatedIfft";
  }
  return "unknown";
}

namespace {

using Eigen::MatrixXcd;
using Eigen::VectorXcd;
using Eigen::VectorXd;

VectorXcd as_vector(const std::vector<cplx>& v) {
  return Eigen::Map<const VectorXcd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

std::vector<cplx> as_std(const VectorXcd& v) { return {v.data(), v.data() + v.size()}; }

VectorXd weights_of(const WeightKernel& kernel, std::size_t n) {
  if (kernel.size() != n) {
    throw DimensionError("kernel has " + std::to_string(kernel.size()) + " weights, expected " +
                         std::to_string(n));
  }
  return Eigen::Map<const VectorXd>(kernel.weights.data(), static_cast<Eigen::Index>(n));
}

// Centred right-hand side b = A (y - offset) together with what produced it.
struct Problem {
  std::vector<double> nodes;
  std::vector<double> centred;
  double offset = 0.0;
  VectorXd w;
  VectorXcd b;
  std::vector<std::string> warnings;
};

Problem make_problem(const SampledSeries& series, const WeightKernel& kernel, std::size_t n,
                     const SolveOptions& options) {
  require_even_coeffs(n);
  Problem p;
  p.nodes = series.nodes();
  p.w = weights_of(kernel, n);
  p.offset = options.centre ? series.mean() : 0.0;
  p.centred.resize(series.size());
  std::transform(series.values().begin(), series.values().end(), p.centred.begin(),
                 [&](double v) { return v - p.offset; });
  const auto k = frequency_grid(n);
  p.b = as_vector(ndft::omp::forward(p.nodes, k, ndft::to_complex(p.centred)));
  if (n > series.size()) {
    p.warnings.push_back("n_coeffs (" + std::to_string(n) + ") exceeds the number of observations (" +
                         std::to_string(series.size()) + ")");
  }
  return p;
}

double residual_norm(const VectorXcd& f, const MatrixXcd& g, const VectorXd& w, const VectorXcd& b,
                     bool* relative) {
  const VectorXcd wb = w.asDiagonal() * b;
  const VectorXcd r = f + w.asDiagonal() * (g * f) - wb;
  const double denom = wb.norm();
  if (denom == 0.0) {
    *relative = false;
    return r.norm();
  }
  *relative = true;
  return r.norm() / denom;
}

// f^H W^-1 f + ||A^H f - y||^2, evaluated matrix-free at the problem nodes.
double problem_cost(const VectorXcd& f, const Problem& p) {
  const std::size_t n = static_cast<std::size_t>(f.size());
  double penalty = 0.0;
  for (Eigen::Index k = 0; k < f.size(); ++k) penalty += std::norm(f[k]) / p.w[k];
  const auto fit = ndft::omp::synthesize(p.nodes, frequency_grid(n), as_std(f));
  double misfit = 0.0;
  for (std::size_t j = 0; j < fit.size(); ++j) misfit += std::norm(fit[j] - p.centred[j]);
  return penalty + misfit;
}

InterpSolution finish(VectorXcd f, const Problem& p, const MatrixXcd& g, SolveMethod method,
                      double condition, const SolveOptions& options) {
  InterpSolution s;
  s.spectrum = Spectrum(as_std(f));
  s.offset = p.offset;
  s.method = method;
  s.condition_estimate = condition;
  s.warnings = p.warnings;
  bool relative = true;
  s.stationarity_residual = residual_norm(f, g, p.w, p.b, &relative);
  if (!relative) s.warnings.push_back("zero right-hand side; stationarity residual is absolute");
  if (!(s.stationarity_residual <= options.stationarity_tolerance)) {
    s.warnings.push_back("stationarity residual " + std::to_string(s.stationarity_residual) +
                         " above tolerance");
  }
  s.cost = problem_cost(f, p);
  return s;
}

InterpSolution dense_from_problem(Problem& p, const MatrixXcd& g, const SolveOptions& options) {
  const auto n = g.rows();
  MatrixXcd system = MatrixXcd::Identity(n, n);
  system.noalias() += p.w.asDiagonal() * g;
  Eigen::PartialPivLU<MatrixXcd> lu(system);
  const double rc = lu.rcond();
  if (!(rc > 0.0)) throw NumericalError("dense system (I + W G) is singular");
  VectorXcd f = lu.solve(p.w.asDiagonal() * p.b);
  return finish(std::move(f), p, g, SolveMethod::DenseOracle, 1.0 / rc, options);
}

}  // namespace

std::vector<cplx> InterpSolution::reconstruct_complex(std::span<const double> nodes) const {
  auto out = ndft::omp::synthesize(nodes, frequency_grid(spectrum.size()), spectrum.coeffs());
  for (auto& v : out) v += offset;
  return out;
}

std::vector<double> InterpSolution::reconstruct(std::span<const double> nodes) const {
  const auto c = reconstruct_complex(nodes);
  std::vector<double> out(c.size());
  std::transform(c.begin(), c.end(), out.begin(), [](const cplx& v) { return v.real(); });
  return out;
}

Eigen::MatrixXcd GramFactors::reconstruct() const {
  return permutation.transpose() * (lower * upper);
}

GramFactors factor_gram(const Eigen::MatrixXcd& gram) {
  if (gram.rows() != gram.cols()) throw DimensionError("factor_gram: matrix is not square");
  Eigen::PartialPivLU<MatrixXcd> lu(gram);
  GramFactors f;
  f.lower = lu.matrixLU().triangularView<Eigen::UnitLower>();
  f.upper = lu.matrixLU().triangularView<Eigen::Upper>();
  f.permutation = lu.permutationP();
  return f;
}

double cost(const Spectrum& spectrum, const SampledSeries& series, const TransformMatrix& a,
            const WeightKernel& kernel) {
  if (a.m_rows() != series.size()) throw DimensionError("cost: matrix rows do not match series length");
  const auto w = weights_of(kernel, a.n_cols());
  const auto fit = adjoint(a, spectrum);
  double penalty = 0.0;
  for (std::size_t k = 0; k < spectrum.size(); ++k) penalty += std::norm(spectrum.coeffs()[k]) / w[k];
  double misfit = 0.0;
  for (std::size_t j = 0; j < fit.size(); ++j) misfit += std::norm(fit[j] - series.values()[j]);
  return penalty + misfit;
}

std::vector<cplx> cost_gradient(const Spectrum& spectrum, const SampledSeries& series,
                                const TransformMatrix& a, const WeightKernel& kernel) {
  if (a.m_rows() != series.size()) throw DimensionError("cost_gradient: matrix rows do not match series length");
  if (spectrum.size() != a.n_cols()) throw DimensionError("cost_gradient: spectrum length mismatch");
  const auto w = weights_of(kernel, a.n_cols());
  const VectorXcd f = as_vector(spectrum.coeffs());
  const VectorXcd b = as_vector(forward(a, series.values()).coeffs());
  const VectorXcd grad = 2.0 * (w.cwiseInverse().asDiagonal() * f + gram(a) * f - b);
  return as_std(grad);
}

InterpSolution solve_equispaced(const SampledSeries& series, const WeightKernel& kernel,
                                std::size_t n_coeffs, const SolveOptions& options) {
  if (!series.equispaced()) {
    throw InvalidArgument("solve_equispaced: nodes are not 1/M-spaced; use solve_general");
  }
  if (n_coeffs > series.size()) {
    throw InvalidArgument("solve_equispaced: n_coeffs exceeds M, the Gram matrix is not M I");
  }
  Problem p = make_problem(series, kernel, n_coeffs, options);
  const double m = static_cast<double>(series.size());
  VectorXcd f(p.b.size());
  for (Eigen::Index k = 0; k < f.size(); ++k) f[k] = p.b[k] * p.w[k] / (m * p.w[k] + 1.0);
  const MatrixXcd g = ndft::gram_type1(p.nodes, n_coeffs);
  return finish(std::move(f), p, g, SolveMethod::EquispacedClosedForm, 1.0, options);
}

InterpSolution solve_general(const SampledSeries& series, const WeightKernel& kernel,
                             std::size_t n_coeffs, const SolveOptions& options) {
  Problem p = make_problem(series, kernel, n_coeffs, options);
  const auto n = static_cast<Eigen::Index>(n_coeffs);
  const MatrixXcd g = ndft::gram_type1(p.nodes, n_coeffs);

  Eigen::PartialPivLU<MatrixXcd> gram_lu(g);
  const MatrixXcd& packed = gram_lu.matrixLU();
  // G = P^T L U, so Y = P^T L and Z = U in (X + Y Z)^-1 with X = W^-1.
  const MatrixXcd y = gram_lu.permutationP().transpose() *
                      MatrixXcd(packed.triangularView<Eigen::UnitLower>());
  const MatrixXcd u = packed.triangularView<Eigen::Upper>();

  MatrixXcd inner = MatrixXcd::Identity(n, n);
  inner.noalias() += u * (p.w.asDiagonal() * y);
  Eigen::PartialPivLU<MatrixXcd> inner_lu(inner);
  const double rc = inner_lu.rcond();
  const double condition = rc > 0.0 ? 1.0 / rc : std::numeric_limits<double>::infinity();
  if (!(condition <= options.condition_limit)) {
    p.warnings.push_back("inner Kailath matrix condition estimate " + std::to_string(condition) +
                         " above limit; using dense path");
    return dense_from_problem(p, g, options);
  }

  const VectorXcd wb = p.w.asDiagonal() * p.b;
  const VectorXcd v = inner_lu.solve(u * wb);
  VectorXcd f = wb - p.w.asDiagonal() * (y * v);
  return finish(std::move(f), p, g, SolveMethod::KailathLU, condition, options);
}

InterpSolution solve_dense(const SampledSeries& series, const WeightKernel& kernel,
                           std::size_t n_coeffs, const SolveOptions& options) {
  Problem p = make_problem(series, kernel, n_coeffs, options);
  const MatrixXcd g = ndft::gram_type1(p.nodes, n_coeffs);
  return dense_from_problem(p, g, options);
}

InterpSolution solve(const SampledSeries& series, const WeightKernel& kernel, std::size_t n_coeffs,
                     const SolveOptions& options) {
  if (series.equispaced() && n_coeffs <= series.size()) {
    return solve_equispaced(series, kernel, n_coeffs, options);
  }
  return solve_general(series, kernel, n_coeffs, options);
}

Residual stationarity_residual(const InterpSolution& solution, const SampledSeries& series,
                               const TransformMatrix& a, const WeightKernel& kernel) {
  if (a.m_rows() != series.size()) throw DimensionError("stationarity_residual: row count mismatch");
  if (solution.spectrum.size() != a.n_cols()) throw DimensionError("stationarity_residual: spectrum length mismatch");
  const auto w = weights_of(kernel, a.n_cols());
  std::vector<double> centred(series.values());
  for (double& v : centred) v -= solution.offset;
  const VectorXcd b = as_vector(forward(a, centred).coeffs());
  Residual r;
  r.value = residual_norm(as_vector(solution.spectrum.coeffs()), gram(a), w, b, &r.relative);
  return r;
}

Eigen::VectorXd curvature_spectrum(const SampledSeries& series, const WeightKernel& kernel,
                                   std::size_t n_coeffs) {
  require_even_coeffs(n_coeffs);
  const VectorXd root = weights_of(kernel, n_coeffs).cwiseSqrt();
  const MatrixXcd g = ndft::gram_type1(series.nodes(), n_coeffs);
  MatrixXcd h = root.asDiagonal() * g * root.asDiagonal();
  h.diagonal().array() += 1.0;
  Eigen::SelfAdjointEigenSolver<MatrixXcd> eig(h, Eigen::EigenvaluesOnly);
  if (eig.info() != Eigen::Success) throw NumericalError("curvature eigensolve did not converge");
  return eig.eigenvalues();
}

double curvature_check(const SampledSeries& series, const WeightKernel& kernel, std::size_t n_coeffs) {
  return curvature_spectrum(series, kernel, n_coeffs).minCoeff();
}

std::vector<double> NominalGrid::nodes() const {
  std::vector<double> x(size);
  for (std::size_t i = 0; i < size; ++i) x[i] = static_cast<double>(i) / static_cast<double>(size) - 0.5;
  return x;
}

NominalGrid nominal_grid_for(const SampledSeries& series) {
  const auto& x = series.nodes();
  if (x.size() < 2) return NominalGrid{1};
  std::vector<double> gaps(x.size() - 1);
  for (std::size_t j = 1; j < x.size(); ++j) gaps[j - 1] = x[j] - x[j - 1];
  auto mid = gaps.begin() + static_cast<std::ptrdiff_t>(gaps.size() / 2);
  std::nth_element(gaps.begin(), mid, gaps.end());
  return NominalGrid{static_cast<std::size_t>(std::max(1.0, std::round(1.0 / *mid)))};
}

InterpSolution ifft_baseline(const SampledSeries& series, const WeightKernel& kernel,
                             std::size_t n_coeffs, const NominalGrid& grid, const SolveOptions& options) {
  require_even_coeffs(n_coeffs);
  if (grid.size == 0) throw InvalidArgument("ifft_baseline: empty nominal grid");
  const double offset = options.centre ? series.mean() : 0.0;
  const std::size_t mg = grid.size;

  std::vector<double> sums(mg, 0.0);
  std::vector<std::size_t> counts(mg, 0);
  for (std::size_t j = 0; j < series.size(); ++j) {
    const auto slot = static_cast<long>(std::lround((series.nodes()[j] + 0.5) * static_cast<double>(mg)));
    const auto i = static_cast<std::size_t>(slot % static_cast<long>(mg));
    sums[i] += series.values()[j] - offset;
    ++counts[i];
  }
  std::size_t collisions = 0;
  std::vector<double> gridded(mg, 0.0);
  for (std::size_t i = 0; i < mg; ++i) {
    if (counts[i] > 1) ++collisions;
    if (counts[i] > 0) gridded[i] = sums[i] / static_cast<double>(counts[i]);
  }

  // The gridded series is fully equispaced, so the closed form is exact for it.
  // Zero-filled slots are data here; centring was already applied.
  const auto grid_nodes = grid.nodes();
  SolveOptions raw = options;
  raw.centre = false;
  Problem p = make_problem(SampledSeries(grid_nodes, gridded), kernel, n_coeffs, raw);
  p.offset = offset;
  const double m = static_cast<double>(mg);
  VectorXcd f(p.b.size());
  for (Eigen::Index k = 0; k < f.size(); ++k) f[k] = p.b[k] * p.w[k] / (m * p.w[k] + 1.0);
  const MatrixXcd g = ndft::gram_type1(p.nodes, n_coeffs);
  if (collisions > 0) {
    p.warnings.push_back(std::to_string(collisions) +
                         " nominal grid slots received several observations; averaged");
  }
  InterpSolution s = finish(std::move(f), p, g, SolveMethod::TruncatedIfft, 1.0, options);
  return s;
}

}  // namespace ingap
