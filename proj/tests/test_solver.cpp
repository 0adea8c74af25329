#include <catch2/catch_amalgamated.hpp>

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "ingap/ndft.hpp"
#include "ingap/solver.hpp"
#include "ingap/synthetic.hpp"
#include "oracle.hpp"

using namespace ingap;

namespace {

std::vector<double> random_values(std::size_t m, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  std::vector<double> v(m);
  for (auto& x : v) x = g(rng);
  return v;
}

// 64-point grid with 20% of the nodes removed at random.
SampledSeries gapped_instance(std::uint64_t seed, std::size_t m = 64) {
  const auto x = synthetic::drop_random(equispaced_nodes(m), 0.2, seed);
  return SampledSeries(x, random_values(x.size(), seed + 1));
}

std::vector<double> centred(const SampledSeries& s) {
  std::vector<double> y = s.values();
  const double mu = s.mean();
  for (double& v : y) v -= mu;
  return y;
}

double norm2(std::span<const double> y) {
  double s = 0;
  for (double v : y) s += v * v;
  return s;
}

}  // namespace

TEST_CASE("cost examples", "[solver]") {
  const SampledSeries s = gapped_instance(1);
  const auto a = build_type1(s.nodes(), 16);
  const auto w = sobolev_kernel(16);
  const Spectrum zero(std::vector<cplx>(16, 0.0));
  CHECK(cost(zero, s, a, w) == Catch::Approx(norm2(s.values())).epsilon(1e-14));

  const SampledSeries quiet = s.with_values(std::vector<double>(s.size(), 0.0));
  std::vector<cplx> f(16, 0.0);
  f[8] = cplx(0.3, -0.1);
  CHECK(cost(Spectrum(f), quiet, a, w) > 0.0);

  std::mt19937_64 rng(5);
  std::normal_distribution<double> g;
  for (auto& c : f) c = cplx(g(rng), g(rng)) * 0.01;
  const auto floored = w.floored(1e-6);
  const double expect = oracle::cost_five_terms(s.nodes(), s.values(), f, floored.weights);
  CHECK(cost(Spectrum(f), s, a, floored) == Catch::Approx(expect).epsilon(1e-10));
  CHECK_THROWS_AS(cost(Spectrum(f), s, build_type1(s.nodes(), 8), floored), DimensionError);
}

TEST_CASE("equispaced closed form limits", "[solver]") {
  const std::size_t m = 16, n = 8;
  const SampledSeries s(equispaced_nodes(m), random_values(m, 7));
  REQUIRE(s.equispaced());
  const auto y = centred(s);
  const auto ay = oracle::naive_forward(s.nodes(), frequency_grid(n), ndft::to_complex(y));

  WeightKernel huge;
  huge.weights.assign(n, 1e12);
  const auto loose = solve_equispaced(s, huge, n);
  CHECK(loose.method == SolveMethod::EquispacedClosedForm);
  std::vector<cplx> normalized(n);
  for (std::size_t k = 0; k < n; ++k) normalized[k] = ay[k] / static_cast<double>(m);
  CHECK(oracle::rel_l2(loose.spectrum.coeffs(), normalized) < 1e-10);

  WeightKernel tiny;
  tiny.weights.assign(n, 1e-200);
  const auto tight = solve_equispaced(s, tiny, n);
  for (const auto& c : tight.spectrum.coeffs()) CHECK(std::abs(c) < 1e-190);

  const SampledSeries irregular(synthetic::random_nodes(16, 3), random_values(16, 4));
  CHECK_THROWS_AS(solve_equispaced(irregular, sobolev_kernel(n), n), InvalidArgument);
}

TEST_CASE("closed form, Kailath path and dense oracle agree on equispaced nodes", "[solver]") {
  const std::size_t m = 16, n = 16;
  const SampledSeries s(equispaced_nodes(m), random_values(m, 21));
  const auto w = sobolev_kernel(n, {1, 2, 1e-2});
  const auto closed = solve_equispaced(s, w, n);
  const auto general = solve_general(s, w, n);
  CHECK(general.method == SolveMethod::KailathLU);
  CHECK(oracle::rel_l2(general.spectrum.coeffs(), closed.spectrum.coeffs()) < 1e-8);
  const auto ref = oracle::regularized_solve(s.nodes(), centred(s), w.weights);
  CHECK(oracle::rel_l2(closed.spectrum.coeffs(), ref) < 1e-8);
  CHECK(solve(s, w, n).method == SolveMethod::EquispacedClosedForm);
}

TEST_CASE("Kailath solve matches the extended-precision oracle on gapped nodes", "[solver]") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    CAPTURE(seed);
    const SampledSeries s = gapped_instance(100 + seed);
    const auto w = sobolev_kernel(16, {1, 2, 1e-2});
    const auto sol = solve_general(s, w, 16);
    CHECK(sol.method == SolveMethod::KailathLU);
    const auto ref = oracle::regularized_solve(s.nodes(), centred(s), w.weights);
    CHECK(oracle::rel_l2(sol.spectrum.coeffs(), ref) < 1e-6);
    CHECK(sol.stationarity_residual <= 1e-8);
    CHECK(sol.cost >= 0.0);
  }
}

TEST_CASE("dense path agrees with the Kailath path", "[solver]") {
  const SampledSeries s = gapped_instance(9);
  const auto w = sobolev_kernel(16);
  const auto a = solve_general(s, w, 16);
  const auto b = solve_dense(s, w, 16);
  CHECK(b.method == SolveMethod::DenseOracle);
  CHECK(oracle::rel_l2(a.spectrum.coeffs(), b.spectrum.coeffs()) < 1e-10);
}

TEST_CASE("conditioning guard falls back to the dense path", "[solver]") {
  const SampledSeries s = gapped_instance(12);
  const auto w = sobolev_kernel(16);
  SolveOptions strict;
  strict.condition_limit = 0.5;
  const auto sol = solve_general(s, w, 16, strict);
  CHECK(sol.method == SolveMethod::DenseOracle);
  CHECK_FALSE(sol.warnings.empty());
  const auto ref = oracle::regularized_solve(s.nodes(), centred(s), w.weights);
  CHECK(oracle::rel_l2(sol.spectrum.coeffs(), ref) < 1e-6);
}

TEST_CASE("an in-grid tone is recovered at its frequency", "[solver]") {
  const auto x = synthetic::drop_random(equispaced_nodes(64), 0.25, 17);
  for (int k0 : {1, 3, 6}) {
    std::vector<double> y(x.size());
    for (std::size_t j = 0; j < x.size(); ++j) y[j] = std::cos(2 * std::numbers::pi * k0 * x[j]);
    const auto sol = solve_general(SampledSeries(x, y), flat_kernel(16), 16);
    const auto& c = sol.spectrum.coeffs();
    const auto top = std::max_element(c.begin(), c.end(), [](cplx a, cplx b) { return std::abs(a) < std::abs(b); });
    const long k = sol.spectrum.frequency(static_cast<std::size_t>(top - c.begin()));
    CHECK(std::abs(k) == k0);
  }
}

TEST_CASE("stationarity residual", "[solver]") {
  const SampledSeries s = gapped_instance(31);
  const auto w = sobolev_kernel(16);
  const auto a = build_type1(s.nodes(), 16);
  InterpSolution sol = solve_general(s, w, 16);
  const Residual r = stationarity_residual(sol, s, a, w);
  CHECK(r.relative);
  CHECK(r.value <= 1e-8);
  CHECK(r.value == Catch::Approx(sol.stationarity_residual).margin(1e-12));

  std::vector<double> growth;
  for (double eps : {1e-6, 2e-6, 4e-6}) {
    InterpSolution p = sol;
    for (auto& c : p.spectrum.coeffs()) c += eps;
    growth.push_back(stationarity_residual(p, s, a, w).value);
  }
  CHECK(growth[1] / growth[0] == Catch::Approx(2.0).epsilon(1e-3));
  CHECK(growth[2] / growth[1] == Catch::Approx(2.0).epsilon(1e-3));

  const SampledSeries quiet = s.with_values(std::vector<double>(s.size(), 0.0));
  const auto zero = solve_general(quiet, w, 16);
  for (const auto& c : zero.spectrum.coeffs()) CHECK(c == cplx(0.0, 0.0));
  const Residual rz = stationarity_residual(zero, quiet, a, w);
  CHECK_FALSE(rz.relative);
  CHECK(rz.value == 0.0);
}

TEST_CASE("curvature check", "[solver]") {
  const std::size_t m = 32, n = 16;
  const SampledSeries eq(equispaced_nodes(m), random_values(m, 2));
  const auto w = sobolev_kernel(n);
  const Eigen::VectorXd eig = curvature_spectrum(eq, w, n);
  std::vector<double> expect(n);
  for (std::size_t k = 0; k < n; ++k) expect[k] = 1.0 + static_cast<double>(m) * w.weights[k];
  std::sort(expect.begin(), expect.end());
  for (std::size_t k = 0; k < n; ++k) CHECK(eig[static_cast<long>(k)] == Catch::Approx(expect[k]).epsilon(1e-12));
  CHECK(curvature_check(eq, w, n) >= 1.0 - 1e-12);

  const SampledSeries irr = gapped_instance(41);
  const double lam = curvature_check(irr, w, 16);
  CHECK(lam > 0.0);
  // Independent route: general (non-Hermitian) eigensolver on the same matrix built from the long-double Gram.
  const auto gl = oracle::gram_ld(irr.nodes(), 16);
  Eigen::MatrixXcd h(16, 16);
  for (int a = 0; a < 16; ++a)
    for (int b = 0; b < 16; ++b) {
      const auto v = gl[static_cast<std::size_t>(a * 16 + b)];
      h(a, b) = cplx(static_cast<double>(v.real()), static_cast<double>(v.imag())) *
                std::sqrt(w.weights[static_cast<std::size_t>(a)] * w.weights[static_cast<std::size_t>(b)]);
    }
  h.diagonal().array() += 1.0;
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> ces(h);
  double min_re = 1e300;
  for (int i = 0; i < 16; ++i) min_re = std::min(min_re, ces.eigenvalues()[i].real());
  CHECK(lam == Catch::Approx(min_re).epsilon(1e-10));

  // N = 2 toy against the closed-form 2x2 eigenvalues.
  const std::vector<double> x{-0.3, 0.1, 0.25};
  WeightKernel toy;
  toy.weights = {0.3, 0.7};
  const auto g = oracle::gram_ld(x, 2);
  const cplx off(static_cast<double>(g[1].real()), static_cast<double>(g[1].imag()));
  const auto [lo, hi] = oracle::hermitian_eig2(1.0 + 0.3 * 3.0, std::sqrt(0.3 * 0.7) * off, 1.0 + 0.7 * 3.0);
  const Eigen::VectorXd toy_eig = curvature_spectrum(SampledSeries(x, {1.0, 2.0, 3.0}), toy, 2);
  CHECK(toy_eig[0] == Catch::Approx(lo).epsilon(1e-13));
  CHECK(toy_eig[1] == Catch::Approx(hi).epsilon(1e-13));
}

TEST_CASE("solution is a local minimum of the cost", "[solver][property]") {
  const SampledSeries s = gapped_instance(51);
  const auto w = sobolev_kernel(16);
  SolveOptions raw;
  raw.centre = false;
  const auto sol = solve_general(s, w, 16, raw);
  const auto a = build_type1(s.nodes(), 16);
  const double best = cost(sol.spectrum, s, a, w);
  CHECK(best == Catch::Approx(sol.cost).epsilon(1e-10));
  double fnorm = 0;
  for (const auto& c : sol.spectrum.coeffs()) fnorm += std::norm(c);
  fnorm = std::sqrt(fnorm);
  std::mt19937_64 rng(8);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<cplx> d(16);
    double dn = 0;
    for (auto& c : d) {
      c = cplx(g(rng), g(rng));
      dn += std::norm(c);
    }
    Spectrum moved = sol.spectrum;
    for (std::size_t k = 0; k < 16; ++k) moved.coeffs()[k] += d[k] * (1e-3 * fnorm / std::sqrt(dn));
    CHECK(best <= cost(moved, s, a, w));
  }
}

TEST_CASE("reconstruction of a real series is real", "[solver][property]") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const SampledSeries s = gapped_instance(60 + seed);
    for (const auto& w : {sobolev_kernel(16), fejer_kernel(16)}) {
      const auto sol = solve_general(s, w, 16);
      for (const cplx& v : sol.reconstruct_complex(s.nodes())) CHECK(std::abs(v.imag()) <= 1e-9 * std::abs(v));
    }
  }
}

TEST_CASE("cost gradient matches central differences", "[solver]") {
  const SampledSeries s = gapped_instance(71);
  const auto w = sobolev_kernel(16).floored(1e-3);
  const auto a = build_type1(s.nodes(), 16);
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g;
  std::vector<cplx> f(16);
  for (auto& c : f) c = cplx(g(rng), g(rng)) * 0.1;
  const Spectrum at(f);
  const auto grad = cost_gradient(at, s, a, w);
  std::vector<cplx> fd(16);
  const double h = 1e-5;
  for (std::size_t k = 0; k < 16; ++k) {
    for (int part = 0; part < 2; ++part) {
      const cplx step = part == 0 ? cplx(h, 0) : cplx(0, h);
      Spectrum up = at, down = at;
      up.coeffs()[k] += step;
      down.coeffs()[k] -= step;
      const double d = (cost(up, s, a, w) - cost(down, s, a, w)) / (2 * h);
      fd[k] += part == 0 ? cplx(d, 0) : cplx(0, d);
    }
  }
  CHECK(oracle::rel_l2(fd, grad) < 1e-5);
}

TEST_CASE("Gram LU factors reconstruct the Gram matrix", "[solver]") {
  const SampledSeries s = gapped_instance(81);
  const Eigen::MatrixXcd g = gram(build_type1(s.nodes(), 16));
  const GramFactors f = factor_gram(g);
  CHECK((f.reconstruct() - g).norm() <= 1e-9 * g.norm());
  CHECK(f.lower.isLowerTriangular());
  CHECK(f.upper.isUpperTriangular());
}

TEST_CASE("solves are bit-reproducible across thread counts", "[solver]") {
  const SampledSeries s = gapped_instance(91, 128);
  const auto w = sobolev_kernel(32);
  omp_set_num_threads(1);
  const auto one = solve_general(s, w, 32);
  omp_set_num_threads(4);
  const auto four = solve_general(s, w, 32);
  omp_set_num_threads(omp_get_num_procs());
  CHECK(one.spectrum.coeffs() == four.spectrum.coeffs());
}

TEST_CASE("truncated iFFT baseline", "[solver]") {
  const std::size_t m = 64, n = 16;
  const SampledSeries full(equispaced_nodes(m), random_values(m, 99));
  const auto w = sobolev_kernel(n);
  const auto base = ifft_baseline(full, w, n, NominalGrid{m});
  const auto closed = solve_equispaced(full, w, n);
  CHECK(base.method == SolveMethod::TruncatedIfft);
  CHECK(oracle::rel_l2(base.spectrum.coeffs(), closed.spectrum.coeffs()) < 1e-12);
  CHECK(base.offset == closed.offset);

  const SampledSeries quiet = full.with_values(std::vector<double>(m, 0.0));
  for (double v : ifft_baseline(quiet, w, n, NominalGrid{m}).reconstruct(full.nodes())) CHECK(v == 0.0);

  // A 25% block gap in a slow sinusoid: inside the gap the baseline sits
  // closer to the mean than the iNFFT interpolant.
  const std::size_t mm = 256;
  const auto grid = equispaced_nodes(mm);
  std::vector<double> x;
  std::vector<double> gap;
  for (std::size_t j = 0; j < mm; ++j) (j >= 96 && j < 160 ? gap : x).push_back(grid[j]);
  const std::vector<synthetic::Tone> tone{{2.0, 1.0, 0.3}, {1.0, 0.5, 1.0}};
  const SampledSeries gapped(x, synthetic::evaluate_tones(x, tone, 10.0));
  const auto wk = sobolev_kernel(32);
  const auto inv = solve_general(gapped, wk, 32);
  const auto bl = ifft_baseline(gapped, wk, 32, NominalGrid{mm});
  double dev_inv = 0, dev_bl = 0;
  for (double v : inv.reconstruct(gap)) dev_inv += std::abs(v - inv.offset);
  for (double v : bl.reconstruct(gap)) dev_bl += std::abs(v - bl.offset);
  CHECK(dev_bl < dev_inv);
  const auto truth = synthetic::evaluate_tones(gap, tone, 10.0);
  CHECK(oracle::rel_l2(inv.reconstruct(gap), truth) < oracle::rel_l2(bl.reconstruct(gap), truth));

  CHECK_FALSE(ifft_baseline(full, w, n, NominalGrid{m / 4}).warnings.empty());
}
