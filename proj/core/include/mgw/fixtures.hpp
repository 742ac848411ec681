#pragma once

#include <random>

#include "mgw/lattice.hpp"

namespace mgw::fixtures {

struct Options {
  int terms = 2;
  double sigma_min = 0.55, sigma_max = 0.7;
  double center_radius = 0.5;
  double momentum_max = 0.5;
  double amplitude_min = 0.3, amplitude_max = 1.0;
  bool real = false;
};

// sum of Gaussian-windowed plane waves with seeded parameters
Field random_field(const Lattice& lat, std::mt19937_64& rng, const Options& o = {});
// real and non-negative windowed field, used as gauge parameter
Field random_real(const Lattice& lat, std::mt19937_64& rng, double peak, const Options& o = {});

}  // namespace mgw::fixtures
