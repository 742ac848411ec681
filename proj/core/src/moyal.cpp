#include "mgw/moyal.hpp"

#include <cmath>
#include <numbers>

#include "mgw/fft.hpp"

namespace mgw {

ThetaStructure::ThetaStructure(int D, std::vector<double> block_thetas)
    : d_(D), th_(std::move(block_thetas)) {
  if (D < 1) throw PreconditionError("theta dimension must be >= 1");
  if (static_cast<int>(th_.size()) != D / 2)
    throw PreconditionError("need one theta per coordinate pair");
  for (double t : th_)
    if (!(t >= 0.0) || !std::isfinite(t)) throw PreconditionError("block theta must be >= 0");
  m_.assign(D * D, 0.0);
  inv_.assign(D * D, 0.0);
  for (int b = 0; b < blocks(); ++b) {
    const int e = 2 * b, o = 2 * b + 1;
    m_[e * D + o] = th_[b];
    m_[o * D + e] = -th_[b];
    if (th_[b] > 0.0) {
      inv_[e * D + o] = -1.0 / th_[b];
      inv_[o * D + e] = 1.0 / th_[b];
    }
  }
}

ThetaStructure ThetaStructure::uniform(int D, double theta) {
  return ThetaStructure(D, std::vector<double>(D / 2, theta));
}

bool ThetaStructure::invertible() const {
  if (d_ % 2 != 0) return false;
  for (double t : th_)
    if (!(t > 0.0)) return false;
  return true;
}

double ThetaStructure::inverse(int mu, int nu) const {
  if (!invertible()) throw PreconditionError("theta is degenerate");
  return inv_[mu * d_ + nu];
}

double ThetaStructure::det() const {
  if (d_ % 2 != 0) return 0.0;
  double d = 1.0;
  for (double t : th_) d *= t * t;
  return d;
}

ThetaStructure ThetaStructure::scaled(double s) const {
  auto t = th_;
  for (auto& x : t) x *= s;
  return ThetaStructure(d_, t);
}

std::string StarBackend::name() const {
  switch (kind) {
    case BackendKind::SpectralTwisted: return "spectral";
    case BackendKind::SeriesOrder: return "series" + std::to_string(order);
    case BackendKind::KernelQuadrature: return "kernel" + std::to_string(refine);
  }
  return "?";
}

StarBackend parse_backend(const std::string& name, int order, int refine) {
  if (name == "spectral" || name == "SpectralTwisted") return StarBackend::spectral();
  if (name == "series" || name == "SeriesOrder") {
    if (order < 1 || order > moyal::kMaxOrder) throw PreconditionError("series order out of range");
    return StarBackend::series(order);
  }
  if (name == "kernel" || name == "KernelQuadrature") {
    if (refine != 1 && refine != 2 && refine != 4)
      throw PreconditionError("kernel resolution must be 1, 2 or 4");
    return StarBackend::kernel(refine);
  }
  throw PreconditionError("unknown backend " + name);
}

namespace moyal {
namespace {

void check_pair(const Field& f, const Field& g, const ThetaStructure& th) {
  require_same_lattice(f, g);
  if (f.lattice().dim() != th.dim()) throw PreconditionError("theta dimension mismatch");
}

// out[order-permuted index] = in[index]
std::vector<cplx> permute(const std::vector<cplx>& in, const std::vector<int>& dims,
                          const std::vector<int>& order) {
  const int D = static_cast<int>(dims.size());
  std::vector<std::size_t> stride(D, 1);
  for (int mu = D - 2; mu >= 0; --mu) stride[mu] = stride[mu + 1] * dims[mu + 1];
  std::vector<int> pdims(D);
  for (int i = 0; i < D; ++i) pdims[i] = dims[order[i]];
  std::vector<cplx> out(in.size());
  std::vector<int> idx(D, 0);
  for (std::size_t o = 0; o < out.size(); ++o) {
    std::size_t src = 0;
    for (int i = 0; i < D; ++i) src += idx[order[i]] * stride[order[i]];
    out[o] = in[src];
    for (int i = D - 1; i >= 0; --i) {
      if (++idx[order[i]] < pdims[i]) break;
      idx[order[i]] = 0;
    }
  }
  return out;
}

std::vector<cplx> unpermute(const std::vector<cplx>& in, const std::vector<int>& dims,
                            const std::vector<int>& order) {
  const int D = static_cast<int>(dims.size());
  std::vector<std::size_t> stride(D, 1);
  for (int mu = D - 2; mu >= 0; --mu) stride[mu] = stride[mu + 1] * dims[mu + 1];
  std::vector<int> pdims(D);
  for (int i = 0; i < D; ++i) pdims[i] = dims[order[i]];
  std::vector<cplx> out(in.size());
  std::vector<int> idx(D, 0);
  for (std::size_t o = 0; o < in.size(); ++o) {
    std::size_t dst = 0;
    for (int i = 0; i < D; ++i) dst += idx[order[i]] * stride[order[i]];
    out[dst] = in[o];
    for (int i = D - 1; i >= 0; --i) {
      if (++idx[order[i]] < pdims[i]) break;
      idx[order[i]] = 0;
    }
  }
  return out;
}

double factorial(int n) {
  double r = 1.0;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

}  // namespace

Field star(const Field& f, const Field& g, const ThetaStructure& th, const StarBackend& b) {
  check_pair(f, g, th);
  switch (b.kind) {
    case BackendKind::SpectralTwisted: return spectral_twisted(f, g, th);
    case BackendKind::SeriesOrder: return series_order(f, g, th, b.order);
    case BackendKind::KernelQuadrature: return kernel_quadrature(f, g, th, b.refine, b.literal_kernel);
  }
  throw PreconditionError("unknown backend");
}

Field star_commutator(const Field& f, const Field& g, const ThetaStructure& th,
                      const StarBackend& b) {
  return star(f, g, th, b) - star(g, f, th, b);
}

Field star_anticommutator(const Field& f, const Field& g, const ThetaStructure& th,
                          const StarBackend& b) {
  return star(f, g, th, b) + star(g, f, th, b);
}

// Mixed representation: Fourier on the odd axis of each block, position on the even one.
//   (f*g)(x) = sum_{q,p} e^{i(q+p)x_O} F(x_E - theta p/2; q) G(x_E + theta q/2; p)
// The loop over p costs one batched transform pair of the full array.
Field spectral_twisted(const Field& f, const Field& g, const ThetaStructure& th) {
  check_pair(f, g, th);
  const Lattice& lat = f.lattice();
  const int D = lat.dim();
  const int B = th.blocks();
  if (B == 0) return pointwise(f, g);

  std::vector<int> order;  // odd axes first, then even (and a trailing unpaired axis)
  for (int b = 0; b < B; ++b) order.push_back(2 * b + 1);
  for (int b = 0; b < B; ++b) order.push_back(2 * b);
  if (D % 2) order.push_back(D - 1);

  std::vector<int> pdims(D);
  for (int i = 0; i < D; ++i) pdims[i] = lat.n(order[i]);
  std::vector<bool> e_axes(D, false), o_axes(D, false);
  for (int i = 0; i < D; ++i) (i < B ? o_axes : e_axes)[i] = true;

  std::size_t nO = 1, nE = 1;
  for (int i = 0; i < B; ++i) nO *= pdims[i];
  for (int i = B; i < D; ++i) nE *= pdims[i];

  Field fh(f), gh(g);
  fft::forward(fh);
  fft::forward(gh);
  const auto fp = permute(fh.values(), lat.shape(), order);
  const auto gp = permute(gh.values(), lat.shape(), order);

  // tab[b][j * N + l] = exp(i k_{2b}[j] theta_b k_{2b+1}[l] / 2)
  std::vector<std::vector<cplx>> tab(B);
  for (int b = 0; b < B; ++b) {
    const auto ke = lat.wavenumbers(2 * b);
    const auto ko = lat.wavenumbers(2 * b + 1);
    const int ne = lat.n(2 * b), no = lat.n(2 * b + 1);
    tab[b].resize(std::size_t(ne) * no);
    for (int j = 0; j < ne; ++j)
      for (int l = 0; l < no; ++l)
        tab[b][std::size_t(j) * no + l] = std::polar(1.0, 0.5 * ke[j] * th.block_theta(b) * ko[l]);
  }

  // unravel helpers over the O and E sub-blocks of the permuted layout
  std::vector<std::vector<int>> o_idx(nO, std::vector<int>(B));
  for (std::size_t o = 0; o < nO; ++o) {
    std::size_t r = o;
    for (int i = B - 1; i >= 0; --i) {
      o_idx[o][i] = static_cast<int>(r % pdims[i]);
      r /= pdims[i];
    }
  }
  std::vector<std::vector<int>> e_idx(nE, std::vector<int>(D - B));
  for (std::size_t e = 0; e < nE; ++e) {
    std::size_t r = e;
    for (int i = D - 1; i >= B; --i) {
      e_idx[e][i - B] = static_cast<int>(r % pdims[i]);
      r /= pdims[i];
    }
  }
  auto o_flat = [&](const std::vector<int>& a, const std::vector<int>& c) {
    std::size_t r = 0;
    for (int i = 0; i < B; ++i) r = r * pdims[i] + (a[i] + c[i]) % pdims[i];
    return r;
  };

  std::vector<cplx> F(nO * nE), G(nO * nE), H(nO * nE, 0.0), phase(nE);
  for (std::size_t p = 0; p < nO; ++p) {
    const auto& pi = o_idx[p];
    for (std::size_t e = 0; e < nE; ++e) {
      cplx ph = 1.0;
      for (int b = 0; b < B; ++b) ph *= std::conj(tab[b][std::size_t(e_idx[e][b]) * pdims[b] + pi[b]]);
      phase[e] = ph;
    }
    for (std::size_t q = 0; q < nO; ++q) {
      const cplx* src = &fp[q * nE];
      cplx* dst = &F[q * nE];
      for (std::size_t e = 0; e < nE; ++e) dst[e] = src[e] * phase[e];
    }
    const cplx* gcol = &gp[p * nE];
    for (std::size_t q = 0; q < nO; ++q) {
      const auto& qi = o_idx[q];
      cplx* dst = &G[q * nE];
      for (std::size_t e = 0; e < nE; ++e) {
        cplx ph = 1.0;
        for (int b = 0; b < B; ++b) ph *= tab[b][std::size_t(e_idx[e][b]) * pdims[b] + qi[b]];
        dst[e] = gcol[e] * ph;
      }
    }
    fft::transform(F.data(), pdims, e_axes, +1);
    fft::transform(G.data(), pdims, e_axes, +1);
    for (std::size_t q = 0; q < nO; ++q) {
      cplx* out = &H[o_flat(o_idx[q], pi) * nE];
      const cplx* a = &F[q * nE];
      const cplx* c = &G[q * nE];
      for (std::size_t e = 0; e < nE; ++e) out[e] += a[e] * c[e];
    }
  }
  fft::transform(H.data(), pdims, o_axes, +1);
  const double scale = 1.0 / (double(lat.size()) * double(lat.size()));
  for (auto& z : H) z *= scale;
  return Field(lat, unpermute(H, lat.shape(), order));
}

Field series_order(const Field& f, const Field& g, const ThetaStructure& th, int K) {
  check_pair(f, g, th);
  if (K < 0 || K > kMaxOrder) throw PreconditionError("series order must lie in [0, 16]");
  const Lattice& lat = f.lattice();
  const int D = lat.dim();
  const int B = th.blocks();

  Field fh = lattice::dealias(f), gh = lattice::dealias(g);
  fft::forward(fh);
  fft::forward(gh);
  auto deriv = [&](const Field& hat, const std::vector<int>& ord) {
    Field r(hat);
    std::vector<int> idx(D);
    for (std::size_t i = 0; i < r.size(); ++i) {
      lat.unravel(i, idx.data());
      cplx s = 1.0;
      for (int mu = 0; mu < D && s != 0.0; ++mu) {
        if (ord[mu] == 0) continue;
        if (2 * idx[mu] == lat.n(mu)) {
          s = 0.0;
          break;
        }
        const double k = 2.0 * std::numbers::pi / lat.length(mu) * lat.mode_index(mu, idx[mu]);
        s *= std::pow(cplx(0.0, k), ord[mu]);
      }
      r[i] *= s;
    }
    fft::backward(r);
    return r;
  };

  Field acc(lat);
  std::vector<int> a(B, 0), c(B, 0);
  // enumerate (a_b, c_b) with total order <= K
  auto visit = [&](auto&& self, int b, int used) -> void {
    if (b == B) {
      cplx coef = 1.0;
      std::vector<int> of(D, 0), og(D, 0);
      for (int k = 0; k < B; ++k) {
        const int n = a[k] + c[k];
        if (n > 0 && th.block_theta(k) == 0.0) return;
        coef *= std::pow(cplx(0.0, 0.5 * th.block_theta(k)), n) * (c[k] % 2 ? -1.0 : 1.0) /
                (factorial(a[k]) * factorial(c[k]));
        of[2 * k] = a[k];
        of[2 * k + 1] = c[k];
        og[2 * k + 1] = a[k];
        og[2 * k] = c[k];
      }
      Field df = deriv(fh, of), dg = deriv(gh, og);
      for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += coef * df[i] * dg[i];
      return;
    }
    for (int x = 0; x + used <= K; ++x)
      for (int y = 0; x + y + used <= K; ++y) {
        a[b] = x;
        c[b] = y;
        self(self, b + 1, used + x + y);
      }
  };
  visit(visit, 0, 0);
  return lattice::dealias(acc);
}

Field tilde_coordinate(const Lattice& lat, const ThetaStructure& th, int mu, const TildeFrame& fr) {
  if (!th.invertible()) throw PreconditionError("x-tilde needs an invertible theta");
  if (mu < 0 || mu >= lat.dim()) throw PreconditionError("axis index out of range");
  Field x(lat, fr.shift(mu));
  for (int nu = 0; nu < lat.dim(); ++nu) {
    const double c = 2.0 * fr.scale * th.inverse(mu, nu);
    if (c == 0.0) continue;
    x += c * lattice::coordinate_field(lat, nu);
  }
  return x;
}

Field tilde_left(const Field& f, const ThetaStructure& th, int mu, const TildeFrame& fr) {
  Field r = pointwise(tilde_coordinate(f.lattice(), th, mu, fr), f);
  r += cplx(0.0, fr.scale) * lattice::spectral_derivative(f, mu);
  return r;
}

Field tilde_right(const Field& f, const ThetaStructure& th, int mu, const TildeFrame& fr) {
  Field r = pointwise(tilde_coordinate(f.lattice(), th, mu, fr), f);
  r -= cplx(0.0, fr.scale) * lattice::spectral_derivative(f, mu);
  return r;
}

Field coord_left(const Field& g, const ThetaStructure& th, int mu) {
  Field r = pointwise(lattice::coordinate_field(g.lattice(), mu), g);
  for (int s = 0; s < th.dim(); ++s)
    if (th(mu, s) != 0.0) r += cplx(0.0, 0.5 * th(mu, s)) * lattice::spectral_derivative(g, s);
  return r;
}

Field coord_right(const Field& g, const ThetaStructure& th, int mu) {
  Field r = pointwise(lattice::coordinate_field(g.lattice(), mu), g);
  for (int s = 0; s < th.dim(); ++s)
    if (th(mu, s) != 0.0) r -= cplx(0.0, 0.5 * th(mu, s)) * lattice::spectral_derivative(g, s);
  return r;
}

StarExponential star_exponential(const Field& alpha, int K, const ThetaStructure& th,
                                 const StarBackend& b, double sign) {
  if (K < 1 || K > kMaxOrder) throw PreconditionError("exponential order must lie in [1, 16]");
  for (auto z : alpha.values())
    if (std::abs(z.imag()) > 1e-14 * (1.0 + std::abs(z.real())))
      throw PreconditionError("gauge parameter must be real");
  const Lattice& lat = alpha.lattice();
  Field term(lat, 1.0), sum(lat, 1.0);
  for (int n = 1; n <= K; ++n) {
    term = star(term, alpha, th, b);
    term *= cplx(0.0, sign) / double(n);
    sum += term;
  }
  // Wiener norm: sum of absolute Fourier coefficients, submultiplicative under *
  Field ah(alpha);
  fft::forward(ah);
  double w = 0.0;
  for (auto z : ah.values()) w += std::abs(z);
  w /= double(lat.size());
  return {sum, std::pow(w, K + 1) / factorial(K + 1) * std::exp(w)};
}

}  // namespace moyal
}  // namespace mgw
