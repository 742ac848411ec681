#include "mgw/fixtures.hpp"

#include <numbers>

namespace mgw::fixtures {

Field random_field(const Lattice& lat, std::mt19937_64& rng, const Options& o) {
  std::uniform_real_distribution<double> U(0.0, 1.0);
  const int D = lat.dim();
  Field f(lat);
  for (int t = 0; t < o.terms; ++t) {
    std::vector<double> c(D), p(D);
    for (int mu = 0; mu < D; ++mu) {
      c[mu] = o.center_radius * (2.0 * U(rng) - 1.0);
      p[mu] = o.real ? 0.0 : o.momentum_max * (2.0 * U(rng) - 1.0);
    }
    const double s = o.sigma_min + (o.sigma_max - o.sigma_min) * U(rng);
    const double r = o.amplitude_min + (o.amplitude_max - o.amplitude_min) * U(rng);
    const cplx a = o.real ? cplx(r) : std::polar(r, 2.0 * std::numbers::pi * U(rng));
    f += lattice::gaussian(lat, c, s, a, p);
  }
  return f;
}

Field random_real(const Lattice& lat, std::mt19937_64& rng, double peak, const Options& o) {
  Options q = o;
  q.real = true;
  Field f = random_field(lat, rng, q);
  const double m = max_abs(f);
  if (m > 0.0) f *= peak / m;
  return real_part(f);
}

}  // namespace mgw::fixtures
