#include "ingap/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace ingap::synthetic {

std::vector<double> evaluate_tones(std::span<const double> nodes, std::span<const Tone> tones, double offset) {
  std::vector<double> v(nodes.size(), offset);
  for (std::size_t j = 0; j < nodes.size(); ++j) {
    for (const Tone& t : tones) {
      v[j] += t.amplitude * std::cos(2.0 * std::numbers::pi * t.frequency * nodes[j] + t.phase);
    }
  }
  return v;
}

std::vector<Tone> random_tones(std::size_t count, int max_frequency, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> freq(1, max_frequency);
  std::uniform_real_distribution<double> amp(0.5, 1.5);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
  std::vector<Tone> tones(count);
  for (auto& t : tones) t = Tone{static_cast<double>(freq(rng)), amp(rng), phase(rng)};
  return tones;
}

std::vector<double> random_nodes(std::size_t m, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-0.5, 0.5);
  std::vector<double> x;
  x.reserve(m);
  while (x.size() < m) {
    while (x.size() < m) x.push_back(u(rng));
    std::sort(x.begin(), x.end());
    x.erase(std::unique(x.begin(), x.end()), x.end());
  }
  return x;
}

std::vector<double> jittered_nodes(std::size_t m, double jitter, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const double h = 1.0 / static_cast<double>(m);
  std::uniform_real_distribution<double> u(-0.5 * jitter * h, 0.5 * jitter * h);
  std::vector<double> x(m);
  for (std::size_t j = 0; j < m; ++j) {
    const double base = static_cast<double>(j) * h - 0.5;
    x[j] = std::clamp(base + u(rng), -0.5, std::nextafter(0.5, 0.0));
  }
  std::sort(x.begin(), x.end());
  x.erase(std::unique(x.begin(), x.end()), x.end());
  return x;
}

std::vector<double> drop_blocks(std::span<const double> nodes, std::size_t n_blocks, double fraction, std::uint64_t seed) {
  const std::size_t m = nodes.size();
  const std::size_t per_block = n_blocks == 0 ? 0 : static_cast<std::size_t>(fraction * static_cast<double>(m)) / n_blocks;
  std::vector<char> drop(m, 0);
  std::mt19937_64 rng(seed);
  if (per_block > 0 && per_block < m) {
    std::uniform_int_distribution<std::size_t> start(0, m - per_block);
    for (std::size_t b = 0; b < n_blocks; ++b) {
      const std::size_t s = start(rng);
      std::fill(drop.begin() + static_cast<std::ptrdiff_t>(s), drop.begin() + static_cast<std::ptrdiff_t>(s + per_block), 1);
    }
  }
  std::vector<double> kept;
  for (std::size_t j = 0; j < m; ++j)
    if (!drop[j]) kept.push_back(nodes[j]);
  return kept;
}

std::vector<double> drop_random(std::span<const double> nodes, double fraction, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution keep(1.0 - fraction);
  std::vector<double> kept;
  for (double x : nodes)
    if (keep(rng)) kept.push_back(x);
  if (kept.size() < 2 && nodes.size() >= 2) kept.assign(nodes.begin(), nodes.begin() + 2);
  return kept;
}

void add_noise(std::vector<double>& values, double sigma, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n(0.0, sigma);
  for (double& v : values) v += n(rng);
}

}  // namespace ingap::synthetic
