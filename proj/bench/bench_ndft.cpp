// Serial reference loops against the OpenMP kernels.

#include <benchmark/benchmark.h>

#include "ingap/ndft.hpp"
#include "ingap/solver.hpp"
#include "ingap/spectral_core.hpp"
#include "ingap/synthetic.hpp"

using namespace ingap;

namespace {

struct Fixture {
  std::vector<double> x, f;
  std::vector<cplx> v, c;
  Eigen::MatrixXcd e;
  explicit Fixture(std::size_t m, std::size_t n) : x(synthetic::random_nodes(m, 1)), f(frequency_grid(n)) {
    auto y = synthetic::evaluate_tones(x, synthetic::random_tones(4, static_cast<int>(n / 4), 2), 1.0);
    v = ndft::to_complex(y);
    c.assign(n, cplx(0.5, -0.25));
    e = ndft::serial::phase_matrix(x, f);
  }
};

template <bool Parallel>
void BM_PhaseMatrix(benchmark::State& state) {
  Fixture fx(static_cast<std::size_t>(state.range(0)), static_cast<std::size_t>(state.range(1)));
  for (auto _ : state) {
    auto e = Parallel ? ndft::omp::phase_matrix(fx.x, fx.f) : ndft::serial::phase_matrix(fx.x, fx.f);
    benchmark::DoNotOptimize(e.data());
  }
}

template <bool Parallel>
void BM_Forward(benchmark::State& state) {
  Fixture fx(static_cast<std::size_t>(state.range(0)), static_cast<std::size_t>(state.range(1)));
  for (auto _ : state) {
    auto out = Parallel ? ndft::omp::forward(fx.x, fx.f, fx.v) : ndft::serial::forward(fx.x, fx.f, fx.v);
    benchmark::DoNotOptimize(out.data());
  }
}

template <bool Parallel>
void BM_Synthesize(benchmark::State& state) {
  Fixture fx(static_cast<std::size_t>(state.range(0)), static_cast<std::size_t>(state.range(1)));
  for (auto _ : state) {
    auto out = Parallel ? ndft::omp::synthesize(fx.x, fx.f, fx.c) : ndft::serial::synthesize(fx.x, fx.f, fx.c);
    benchmark::DoNotOptimize(out.data());
  }
}

void BM_GramDirect(benchmark::State& state) {
  Fixture fx(static_cast<std::size_t>(state.range(0)), static_cast<std::size_t>(state.range(1)));
  for (auto _ : state) {
    auto g = ndft::serial::gram_product(fx.e);
    benchmark::DoNotOptimize(g.data());
  }
}

template <bool Parallel>
void BM_GramToeplitz(benchmark::State& state) {
  Fixture fx(static_cast<std::size_t>(state.range(0)), static_cast<std::size_t>(state.range(1)));
  const auto n = static_cast<std::size_t>(state.range(1));
  for (auto _ : state) {
    auto g = Parallel ? ndft::omp::toeplitz_from_moments(ndft::omp::toeplitz_moments(fx.x, n))
                      : ndft::serial::toeplitz_from_moments(ndft::serial::toeplitz_moments(fx.x, n));
    benchmark::DoNotOptimize(g.data());
  }
}

void BM_SolveGeneral(benchmark::State& state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  const auto n = static_cast<std::size_t>(state.range(1));
  const auto x = synthetic::drop_blocks(equispaced_nodes(m), 3, 0.15, 4);
  const SampledSeries s(x, synthetic::evaluate_tones(x, synthetic::random_tones(6, 20, 5), 10.0));
  const auto w = sobolev_kernel(n);
  for (auto _ : state) {
    auto sol = solve_general(s, w, n);
    benchmark::DoNotOptimize(sol.spectrum.coeffs().data());
  }
}

const std::vector<std::vector<int64_t>> kSizes{{1024, 2048, 8192}, {64, 256}};

}  // namespace

BENCHMARK(BM_PhaseMatrix<false>)->ArgsProduct(kSizes)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PhaseMatrix<true>)->ArgsProduct(kSizes)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Forward<false>)->ArgsProduct(kSizes)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Forward<true>)->ArgsProduct(kSizes)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Synthesize<false>)->ArgsProduct(kSizes)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Synthesize<true>)->ArgsProduct(kSizes)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GramDirect)->ArgsProduct(kSizes)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GramToeplitz<false>)->ArgsProduct(kSizes)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GramToeplitz<true>)->ArgsProduct(kSizes)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SolveGeneral)->Args({10000, 1024})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
