#include "mgw/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "mgw/fft.hpp"

namespace mgw {

std::size_t Lattice::max_points = std::size_t{1} << 24;

Lattice Lattice::make(int D, std::vector<int> N, std::vector<double> L) {
  if (D < 1) throw PreconditionError("lattice dimension must be >= 1");
  if (static_cast<int>(N.size()) != D || static_cast<int>(L.size()) != D)
    throw PreconditionError("lattice shape does not match dimension");
  Lattice lat;
  std::size_t total = 1;
  for (int mu = 0; mu < D; ++mu) {
    if (N[mu] < 8 || (N[mu] & (N[mu] - 1)) != 0)
      throw PreconditionError("points per axis must be a power of two >= 8, got " +
                              std::to_string(N[mu]));
    if (!(L[mu] > 0.0) || !std::isfinite(L[mu]))
      throw PreconditionError("box length must be positive");
    total *= static_cast<std::size_t>(N[mu]);
  }
  if (total > max_points) throw ResourceGuardError("lattice exceeds point budget");
  lat.n_ = std::move(N);
  lat.l_ = std::move(L);
  lat.size_ = total;
  lat.stride_.assign(D, 1);
  for (int mu = D - 2; mu >= 0; --mu) lat.stride_[mu] = lat.stride_[mu + 1] * lat.n_[mu + 1];
  return lat;
}

double Lattice::cell_volume() const {
  double v = 1.0;
  for (int mu = 0; mu < dim(); ++mu) v *= spacing(mu);
  return v;
}

std::vector<double> Lattice::wavenumbers(int mu) const {
  std::vector<double> k(n_[mu]);
  const double dk = 2.0 * std::numbers::pi / l_[mu];
  for (int j = 0; j < n_[mu]; ++j) k[j] = dk * mode_index(mu, j);
  return k;
}

void Lattice::unravel(std::size_t flat, int* idx) const {
  for (int mu = dim() - 1; mu >= 0; --mu) {
    idx[mu] = static_cast<int>(flat % n_[mu]);
    flat /= n_[mu];
  }
}

Field::Field(const Lattice& lat, std::vector<cplx> v) : lat_(lat), v_(std::move(v)) {
  if (v_.size() != lat_.size()) throw PreconditionError("sample count does not match lattice");
}

Field& Field::operator+=(const Field& o) {
  require_same_lattice(*this, o);
  for (std::size_t i = 0; i < v_.size(); ++i) v_[i] += o.v_[i];
  return *this;
}

Field& Field::operator-=(const Field& o) {
  require_same_lattice(*this, o);
  for (std::size_t i = 0; i < v_.size(); ++i) v_[i] -= o.v_[i];
  return *this;
}

Field& Field::operator*=(cplx s) {
  for (auto& x : v_) x *= s;
  return *this;
}

bool Field::all_finite() const {
  return std::all_of(v_.begin(), v_.end(),
                     [](cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); });
}

Field operator+(Field a, const Field& b) { return a += b; }
Field operator-(Field a, const Field& b) { return a -= b; }
Field operator-(Field a) { return a *= -1.0; }
Field operator*(cplx s, Field a) { return a *= s; }
Field operator*(Field a, cplx s) { return a *= s; }
Field operator*(double s, Field a) { return a *= s; }

void require_same_lattice(const Field& a, const Field& b) {
  if (a.lattice() != b.lattice()) throw PreconditionError("fields live on different lattices");
}

Field pointwise(const Field& a, const Field& b) {
  require_same_lattice(a, b);
  Field r(a.lattice());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = a[i] * b[i];
  return r;
}

Field conj(const Field& f) {
  Field r(f);
  for (auto& z : r.values()) z = std::conj(z);
  return r;
}

Field real_part(const Field& f) {
  Field r(f);
  for (auto& z : r.values()) z = z.real();
  return r;
}

double l2_norm(const Field& f) {
  double s = 0.0;
  for (auto z : f.values()) s += std::norm(z);
  return std::sqrt(s * f.lattice().cell_volume());
}

double max_abs(const Field& f) {
  double m = 0.0;
  for (auto z : f.values()) m = std::max(m, std::abs(z));
  return m;
}

double masked_max_abs(const Field& f, const Field& mask) {
  require_same_lattice(f, mask);
  double m = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i)
    if (mask[i].real() > 0.5) m = std::max(m, std::abs(f[i]));
  return m;
}

double masked_l2_norm(const Field& f, const Field& mask) {
  require_same_lattice(f, mask);
  double s = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) s += std::norm(f[i]) * mask[i].real();
  return std::sqrt(s * f.lattice().cell_volume());
}

namespace lattice {
namespace {

void check_axis(const Lattice& lat, int mu) {
  if (mu < 0 || mu >= lat.dim()) throw PreconditionError("axis index out of range");
}

// multiplier (ik)^a with the Nyquist mode removed whenever a > 0
cplx derivative_symbol(const Lattice& lat, int mu, int j, int a) {
  if (a == 0) return 1.0;
  if (2 * j == lat.n(mu)) return 0.0;
  const double k = 2.0 * std::numbers::pi / lat.length(mu) * lat.mode_index(mu, j);
  return std::pow(cplx(0.0, k), a);
}

template <class F>
Field apply_symbol(const Field& f, F&& symbol) {
  const auto& lat = f.lattice();
  Field g(f);
  fft::forward(g);
  std::vector<int> idx(lat.dim());
  for (std::size_t i = 0; i < g.size(); ++i) {
    lat.unravel(i, idx.data());
    g[i] *= symbol(idx.data());
  }
  fft::backward(g);
  return g;
}

Field refine_axis(const Field& f, int mu, int r) {
  const auto& lat = f.lattice();
  auto shape = lat.shape();
  const int n = shape[mu];
  const int nf = n * r;
  shape[mu] = nf;
  Lattice fine = Lattice::make(lat.dim(), shape, lat.lengths());
  Field g(f);
  fft::forward_axis(g, mu);
  Field h(fine);
  const std::size_t outer = lat.size() / (lat.stride(mu) * n);
  const std::size_t inner = lat.stride(mu);
  for (std::size_t o = 0; o < outer; ++o)
    for (std::size_t in = 0; in < inner; ++in) {
      auto src = [&](int j) { return g[(o * n + j) * inner + in]; };
      auto dst = [&](int j) -> cplx& { return h[(o * nf + j) * inner + in]; };
      for (int j = 0; j < n / 2; ++j) dst(j) = src(j) * double(r);
      for (int j = n / 2 + 1; j < n; ++j) dst(j + nf - n) = src(j) * double(r);
      dst(n / 2) = 0.5 * double(r) * src(n / 2);
      dst(nf - n / 2) = 0.5 * double(r) * src(n / 2);
    }
  fft::backward_axis(h, mu);
  return h;
}

}  // namespace

cplx integrate(const Field& f) {
  cplx s = 0.0;
  for (auto z : f.values()) s += z;
  return s * f.lattice().cell_volume();
}

double spectral_power(const Field& f) {
  Field g(f);
  fft::forward(g);
  double s = 0.0;
  for (auto z : g.values()) s += std::norm(z);
  return s * f.lattice().cell_volume() / static_cast<double>(f.size());
}

Field spectral_derivative(const Field& f, int mu) {
  const auto& lat = f.lattice();
  check_axis(lat, mu);
  Field g(f);
  fft::forward_axis(g, mu);
  const std::size_t inner = lat.stride(mu);
  const int n = lat.n(mu);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const int j = static_cast<int>((i / inner) % n);
    g[i] *= derivative_symbol(lat, mu, j, 1);
  }
  fft::backward_axis(g, mu);
  return g;
}

Field derivative(const Field& f, const std::vector<int>& orders) {
  const auto& lat = f.lattice();
  if (static_cast<int>(orders.size()) != lat.dim()) throw PreconditionError("order vector size");
  bool any = false;
  for (int a : orders) any = any || a > 0;
  if (!any) return f;
  return apply_symbol(f, [&](const int* idx) {
    cplx s = 1.0;
    for (int mu = 0; mu < lat.dim(); ++mu) s *= derivative_symbol(lat, mu, idx[mu], orders[mu]);
    return s;
  });
}

Field laplacian(const Field& f) {
  const auto& lat = f.lattice();
  return apply_symbol(f, [&](const int* idx) {
    cplx s = 0.0;
    for (int mu = 0; mu < lat.dim(); ++mu) s += derivative_symbol(lat, mu, idx[mu], 2);
    return s;
  });
}

Field inverse_laplacian(const Field& f) {
  const auto& lat = f.lattice();
  return apply_symbol(f, [&](const int* idx) {
    cplx s = 0.0;
    for (int mu = 0; mu < lat.dim(); ++mu) s += derivative_symbol(lat, mu, idx[mu], 2);
    return std::abs(s) > 0.0 ? 1.0 / s : cplx(0.0);
  });
}

Field screened_inverse(const Field& f, double shift) {
  if (!(shift > 0.0)) throw PreconditionError("screening shift must be positive");
  const auto& lat = f.lattice();
  return apply_symbol(f, [&](const int* idx) {
    cplx s = shift;
    for (int mu = 0; mu < lat.dim(); ++mu) s -= derivative_symbol(lat, mu, idx[mu], 2);
    return 1.0 / s;
  });
}

Field dealias(const Field& f) {
  const auto& lat = f.lattice();
  return apply_symbol(f, [&](const int* idx) {
    for (int mu = 0; mu < lat.dim(); ++mu)
      if (3 * std::abs(lat.mode_index(mu, idx[mu])) >= lat.n(mu)) return 0.0;
    return 1.0;
  });
}

Field dealiased_product(const Field& a, const Field& b) {
  return dealias(pointwise(dealias(a), dealias(b)));
}

Field refine(const Field& f, int r) {
  if (r < 1) throw PreconditionError("refinement factor must be >= 1");
  if (r == 1) return f;
  Field g(f);
  for (int mu = 0; mu < f.lattice().dim(); ++mu) g = refine_axis(g, mu, r);
  return g;
}

Field coarsen(const Field& f, const Lattice& coarse, int r) {
  const auto& fine = f.lattice();
  Field c(coarse);
  std::vector<int> idx(coarse.dim());
  for (std::size_t i = 0; i < c.size(); ++i) {
    coarse.unravel(i, idx.data());
    std::size_t off = 0;
    for (int mu = 0; mu < coarse.dim(); ++mu) off += std::size_t(idx[mu]) * r * fine.stride(mu);
    c[i] = f[off];
  }
  return c;
}

Field coordinate_field(const Lattice& lat, int mu) {
  check_axis(lat, mu);
  Field x(lat);
  const std::size_t inner = lat.stride(mu);
  for (std::size_t i = 0; i < x.size(); ++i)
    x[i] = lat.coord(mu, static_cast<int>((i / inner) % lat.n(mu)));
  return x;
}

Field interior_mask(const Lattice& lat, double margin_fraction) {
  if (!(margin_fraction > 0.0 && margin_fraction < 0.5))
    throw PreconditionError("margin fraction must lie in (0, 0.5)");
  Field m(lat, 1.0);
  std::vector<int> idx(lat.dim());
  for (std::size_t i = 0; i < m.size(); ++i) {
    lat.unravel(i, idx.data());
    for (int mu = 0; mu < lat.dim(); ++mu) {
      const double cut = margin_fraction * lat.n(mu) - 1e-9;
      if (idx[mu] < cut || lat.n(mu) - 1 - idx[mu] < cut) {
        m[i] = 0.0;
        break;
      }
    }
  }
  return m;
}

Field plane_wave(const Lattice& lat, const std::vector<int>& mode) {
  if (static_cast<int>(mode.size()) != lat.dim()) throw PreconditionError("mode vector size");
  Field f(lat);
  std::vector<int> idx(lat.dim());
  for (std::size_t i = 0; i < f.size(); ++i) {
    lat.unravel(i, idx.data());
    double ph = 0.0;
    for (int mu = 0; mu < lat.dim(); ++mu)
      ph += 2.0 * std::numbers::pi * mode[mu] / lat.length(mu) * lat.coord(mu, idx[mu]);
    f[i] = std::polar(1.0, ph);
  }
  return f;
}

Field gaussian(const Lattice& lat, const std::vector<double>& center, double sigma, cplx amplitude,
               const std::vector<double>& momentum) {
  const int D = lat.dim();
  if (!(sigma > 0.0)) throw PreconditionError("gaussian width must be positive");
  if (static_cast<int>(center.size()) != D) throw PreconditionError("center dimension");
  if (!momentum.empty() && static_cast<int>(momentum.size()) != D)
    throw PreconditionError("momentum dimension");
  for (int mu = 0; mu < D; ++mu)
    if (center[mu] < -0.5 * lat.length(mu) || center[mu] >= 0.5 * lat.length(mu))
      throw PreconditionError("gaussian center outside the fundamental domain");
  Field f(lat);
  std::vector<int> idx(D);
  for (std::size_t i = 0; i < f.size(); ++i) {
    lat.unravel(i, idx.data());
    double r2 = 0.0, ph = 0.0;
    for (int mu = 0; mu < D; ++mu) {
      const double x = lat.coord(mu, idx[mu]);
      r2 += (x - center[mu]) * (x - center[mu]);
      if (!momentum.empty()) ph += momentum[mu] * x;
    }
    f[i] = amplitude * std::exp(-r2 / (2.0 * sigma * sigma)) * std::polar(1.0, ph);
  }
  if (amplitude != 0.0 && boundary_decay(f) > kDecayLimit)
    throw PreconditionError("gaussian does not decay at the boundary");
  return f;
}

double boundary_decay(const Field& f) {
  const auto& lat = f.lattice();
  double peak = 0.0, shell = 0.0;
  std::vector<int> idx(lat.dim());
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double a = std::abs(f[i]);
    peak = std::max(peak, a);
    lat.unravel(i, idx.data());
    for (int mu = 0; mu < lat.dim(); ++mu)
      if (idx[mu] == 0 || idx[mu] == lat.n(mu) - 1) {
        shell = std::max(shell, a);
        break;
      }
  }
  return peak > 0.0 ? shell / peak : 0.0;
}

}  // namespace lattice
}  // namespace mgw
