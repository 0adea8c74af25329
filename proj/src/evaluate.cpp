#include "ingap/evaluate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "ingap/ndft.hpp"

namespace ingap {

const char* to_string(MaskMode mode) { return mode == MaskMode::Random ? "random" : "block"; }

MaskMode mask_mode_from_string(const std::string& name) {
  if (name == "random") return MaskMode::Random;
  if (name == "block" || name == "contiguous") return MaskMode::ContiguousBlock;
  throw InvalidArgument("unknown mask mode '" + name + "' (expected random or block)");
}

std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
  std::uint64_t z = a + 0x9e3779b97f4a7c15ULL * (b + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

namespace {

struct Neumaier {
  double sum = 0.0, comp = 0.0;
  void add(double v) {
    const double t = sum + v;
    comp += std::abs(sum) >= std::abs(v) ? (sum - t) + v : (v - t) + sum;
    sum = t;
  }
  double value() const { return sum + comp; }
};

double mean_of(std::span<const double> v) {
  Neumaier acc;
  for (double x : v) acc.add(x);
  return acc.value() / static_cast<double>(v.size());
}

void require_same_length(std::span<const double> a, std::span<const double> b, const char* what) {
  if (a.size() != b.size()) throw DimensionError(std::string(what) + ": length mismatch");
}

double t_statistic(std::span<const double> d) {
  const MetricSummary s = summarize(d);
  if (s.stddev == 0.0) return s.mean > 0 ? std::numeric_limits<double>::infinity() : 0.0;
  return s.mean / (s.stddev / std::sqrt(static_cast<double>(d.size())));
}

}  // namespace

Split apply_mask(const SampledSeries& series, const MaskSpec& spec) {
  if (!(spec.fraction > 0.0 && spec.fraction < 1.0)) throw InvalidArgument("mask fraction must lie in (0, 1)");
  const std::size_t m = series.size();
  const auto n_test = static_cast<std::size_t>(std::llround(spec.fraction * static_cast<double>(m)));
  if (n_test < 1 || n_test >= m) {
    throw InvalidArgument("series of length " + std::to_string(m) + " too short for mask fraction " +
                          std::to_string(spec.fraction));
  }
  std::mt19937_64 rng(spec.seed);
  std::vector<char> held(m, 0);
  if (spec.mode == MaskMode::Random) {
    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    for (std::size_t i = 0; i < n_test; ++i) held[order[i]] = 1;
  } else {
    std::uniform_int_distribution<std::size_t> start_dist(0, m - n_test);
    const std::size_t start = start_dist(rng);
    std::fill(held.begin() + static_cast<std::ptrdiff_t>(start),
              held.begin() + static_cast<std::ptrdiff_t>(start + n_test), 1);
  }
  std::vector<std::size_t> train, test;
  for (std::size_t i = 0; i < m; ++i) (held[i] ? test : train).push_back(i);
  return Split{series.subset(train), series.subset(test), std::move(train), std::move(test)};
}

MafeResult mafe(std::span<const double> predicted, std::span<const double> observed) {
  require_same_length(predicted, observed, "mafe");
  MafeResult r;
  Neumaier acc;
  std::size_t used = 0;
  for (std::size_t j = 0; j < observed.size(); ++j) {
    if (observed[j] == 0.0) {
      ++r.excluded;
      continue;
    }
    acc.add(std::abs((predicted[j] - observed[j]) / observed[j]));
    ++used;
  }
  if (used == 0) throw InvalidArgument("mafe: no nonzero observations");
  r.value = acc.value() / static_cast<double>(used);
  return r;
}

double correlation(std::span<const double> a, std::span<const double> b) {
  require_same_length(a, b, "correlation");
  if (a.size() < 2) throw InvalidArgument("correlation: need at least two points");
  const double ma = mean_of(a), mb = mean_of(b);
  Neumaier sab, saa, sbb;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double da = a[i] - ma, db = b[i] - mb;
    sab.add(da * db);
    saa.add(da * da);
    sbb.add(db * db);
  }
  if (saa.value() <= 0.0 || sbb.value() <= 0.0) throw InvalidArgument("correlation: zero variance");
  const double r = sab.value() / std::sqrt(saa.value() * sbb.value());
  return std::clamp(r, -1.0, 1.0);
}

double relative_error(std::span<const double> predicted, std::span<const double> observed) {
  require_same_length(predicted, observed, "relative_error");
  if (observed.empty()) throw InvalidArgument("relative_error: empty input");
  const double mo = mean_of(observed);
  Neumaier num, den;
  for (std::size_t j = 0; j < observed.size(); ++j) {
    num.add((predicted[j] - observed[j]) * (predicted[j] - observed[j]));
    den.add((observed[j] - mo) * (observed[j] - mo));
  }
  if (den.value() <= 0.0) throw InvalidArgument("relative_error: observations have zero variance");
  return 1.0 - std::sqrt(num.value() / den.value());
}

MetricSummary summarize(std::span<const double> values) {
  MetricSummary s;
  if (values.empty()) return s;
  s.mean = mean_of(values);
  if (values.size() < 2) return s;
  Neumaier ss;
  for (double v : values) ss.add((v - s.mean) * (v - s.mean));
  s.stddev = std::sqrt(ss.value() / static_cast<double>(values.size() - 1));
  return s;
}

PermutationResult permutation_test(std::span<const double> deltas, int permutations, std::uint64_t seed) {
  if (deltas.size() < 2) throw InvalidArgument("permutation_test: need at least two replicates");
  if (permutations < 100) throw InvalidArgument("permutation_test: need at least 100 permutations");
  PermutationResult r;
  if (summarize(deltas).stddev == 0.0) {
    r.degenerate = true;
    r.p_value = 1.0;
    return r;
  }
  const double observed = t_statistic(deltas);
  std::mt19937_64 rng(seed);
  std::vector<double> flipped(deltas.size());
  long exceed = 0;
  for (int p = 0; p < permutations; ++p) {
    for (std::size_t i = 0; i < deltas.size(); ++i) {
      const bool flip = (rng() >> 63) != 0;
      flipped[i] = flip ? -deltas[i] : deltas[i];
    }
    if (t_statistic(flipped) >= observed) ++exceed;
  }
  r.p_value = static_cast<double>(exceed + 1) / static_cast<double>(permutations + 1);
  return r;
}

ProtocolReport run_protocol(const SampledSeries& series, const ProtocolConfig& config) {
  ProtocolReport report;
  if (config.fractions.empty() || config.modes.empty()) return report;
  if (config.replicates < 1) throw InvalidArgument("run_protocol: replicates must be >= 1");

  const NominalGrid grid = nominal_grid_for(series);
  const auto& all_nodes = series.nodes();
  const InterpSolution inverse_full = solve(series, config.kernel, config.n_coeffs, config.solve);
  const InterpSolution baseline_full = ifft_baseline(series, config.kernel, config.n_coeffs, grid, config.solve);
  const auto inverse_ref = inverse_full.reconstruct(all_nodes);
  const auto baseline_ref = baseline_full.reconstruct(all_nodes);
  for (const auto& w : inverse_full.warnings) report.warnings.push_back("full-data iNFFT: " + w);

  struct Task {
    std::size_t cell;
    int replicate;
  };
  std::vector<Task> tasks;
  for (std::size_t mi = 0; mi < config.modes.size(); ++mi) {
    for (std::size_t fi = 0; fi < config.fractions.size(); ++fi) {
      EvalReport cell;
      cell.mode = config.modes[mi];
      cell.fraction = config.fractions[fi];
      cell.replicates = config.replicates;
      cell.permutations = config.permutations;
      cell.per_replicate.resize(static_cast<std::size_t>(config.replicates));
      for (int r = 0; r < config.replicates; ++r) tasks.push_back({report.cells.size(), r});
      report.cells.push_back(std::move(cell));
    }
  }

  // Each task writes only its own slot, so the schedule cannot change results.
#pragma omp parallel for schedule(dynamic, 1)
  for (std::size_t t = 0; t < tasks.size(); ++t) {
    EvalReport& cell = report.cells[tasks[t].cell];
    ReplicateResult& out = cell.per_replicate[static_cast<std::size_t>(tasks[t].replicate)];
    out.seed = mix_seed(mix_seed(config.seed, tasks[t].cell), static_cast<std::uint64_t>(tasks[t].replicate));
    try {
      const Split split = apply_mask(series, MaskSpec{cell.mode, cell.fraction, out.seed});
      const InterpSolution inv = solve(split.train, config.kernel, config.n_coeffs, config.solve);
      const InterpSolution base = ifft_baseline(split.train, config.kernel, config.n_coeffs, grid, config.solve);
      const auto& test_nodes = split.test.nodes();
      const auto& obs = split.test.values();
      const auto inv_test = inv.reconstruct(test_nodes);
      const auto base_test = base.reconstruct(test_nodes);
      const MafeResult inv_mafe = mafe(inv_test, obs);
      out.inverse.mafe = inv_mafe.value;
      out.baseline.mafe = mafe(base_test, obs).value;
      out.mafe_excluded = inv_mafe.excluded;
      out.inverse.relative_error = relative_error(inv_test, obs);
      out.baseline.relative_error = relative_error(base_test, obs);
      out.inverse.correlation = correlation(inv.reconstruct(all_nodes), inverse_ref);
      out.baseline.correlation = correlation(base.reconstruct(all_nodes), baseline_ref);
    } catch (const std::exception& e) {
      out.ok = false;
      out.error = e.what();
    }
  }

  for (std::size_t c = 0; c < report.cells.size(); ++c) {
    EvalReport& cell = report.cells[c];
    std::vector<double> im, ic, ir, bm, bc, br, dm, dc, dr;
    for (const auto& r : cell.per_replicate) {
      if (!r.ok) {
        cell.warnings.push_back("replicate failed: " + r.error);
        continue;
      }
      im.push_back(r.inverse.mafe);
      ic.push_back(r.inverse.correlation);
      ir.push_back(r.inverse.relative_error);
      bm.push_back(r.baseline.mafe);
      bc.push_back(r.baseline.correlation);
      br.push_back(r.baseline.relative_error);
      dm.push_back(r.baseline.mafe - r.inverse.mafe);
      dc.push_back(r.inverse.correlation - r.baseline.correlation);
      dr.push_back(r.inverse.relative_error - r.baseline.relative_error);
      if (r.mafe_excluded > 0) {
        cell.warnings.push_back(std::to_string(r.mafe_excluded) + " zero observations excluded from mafe");
      }
    }
    cell.inverse = {summarize(im), summarize(ic), summarize(ir)};
    cell.baseline = {summarize(bm), summarize(bc), summarize(br)};
    if (dm.size() < 2) {
      cell.warnings.push_back("fewer than two successful replicates; standard deviations are 0 and p-values 1");
      continue;
    }
    const std::uint64_t pseed = mix_seed(config.seed ^ 0x5eedULL, c);
    cell.p_mafe = permutation_test(dm, config.permutations, mix_seed(pseed, 0)).p_value;
    cell.p_correlation = permutation_test(dc, config.permutations, mix_seed(pseed, 1)).p_value;
    cell.p_relative_error = permutation_test(dr, config.permutations, mix_seed(pseed, 2)).p_value;
  }
  return report;
}

}  // namespace ingap
