#pragma once

// Seeded synthetic series used by the tests, the acceptance suite and the benchmark.

#include <cstdint>
#include <span>
#include <vector>

#include "ingap/series.hpp"

namespace ingap::synthetic {

struct Tone {
  double frequency = 1.0;  // cycles per unit window
  double amplitude = 1.0;
  double phase = 0.0;
};

/// offset + sum_t a_t cos(2 pi f_t x + phi_t)
std::vector<double> evaluate_tones(std::span<const double> nodes, std::span<const Tone> tones, double offset = 0.0);

/// count tones with integer frequencies in [1, max_frequency], amplitudes in [0.5, 1.5].
std::vector<Tone> random_tones(std::size_t count, int max_frequency, std::uint64_t seed);

/// m sorted distinct uniform draws on [-1/2, 1/2).
std::vector<double> random_nodes(std::size_t m, std::uint64_t seed);

/// Grid j/m - 1/2 with each node moved by up to jitter * (1/m) / 2.
std::vector<double> jittered_nodes(std::size_t m, double jitter, std::uint64_t seed);

/// Keeps the nodes outside n_blocks seeded contiguous runs covering about fraction of them.
std::vector<double> drop_blocks(std::span<const double> nodes, std::size_t n_blocks, double fraction, std::uint64_t seed);

/// Keeps each node with probability 1 - fraction (at least two nodes survive).
std::vector<double> drop_random(std::span<const double> nodes, double fraction, std::uint64_t seed);

/// Adds i.i.d. Gaussian noise.
void add_noise(std::vector<double>& values, double sigma, std::uint64_t seed);

}  // namespace ingap::synthetic
