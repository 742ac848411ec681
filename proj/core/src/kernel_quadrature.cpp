#include <cmath>
#include <numbers>

#include "mgw/moyal.hpp"

namespace mgw::moyal {
namespace {

// contract axis `ax` of a row-major array with W[rows x dims[ax]]
std::vector<cplx> contract(const std::vector<cplx>& in, std::vector<int>& dims, int ax,
                           const std::vector<cplx>& W, int rows) {
  const int cols = dims[ax];
  std::size_t outer = 1, inner = 1;
  for (int i = 0; i < ax; ++i) outer *= dims[i];
  for (int i = ax + 1; i < static_cast<int>(dims.size()); ++i) inner *= dims[i];
  std::vector<cplx> out(outer * rows * inner, 0.0);
  for (std::size_t o = 0; o < outer; ++o)
    for (int r = 0; r < rows; ++r) {
      cplx* dst = &out[(o * rows + r) * inner];
      for (int c = 0; c < cols; ++c) {
        const cplx w = W[std::size_t(r) * cols + c];
        const cplx* src = &in[(o * cols + c) * inner];
        for (std::size_t i = 0; i < inner; ++i) dst[i] += w * src[i];
      }
    }
  dims[ax] = rows;
  return out;
}

}  // namespace

// (f*g)(z) = C sum_x f(x) e^{2i x.A z} Ghat(z - x),  Ghat(d) = sum_y g(y) e^{2i d.A y}
// with A = s Theta^{-1}. s = 1 is the kernel of the series, s = -1/2 the literal two-point form.
Field kernel_quadrature(const Field& f, const Field& g, const ThetaStructure& th, int r,
                        bool literal_kernel) {
  require_same_lattice(f, g);
  const Lattice& lat = f.lattice();
  const int D = lat.dim();
  if (!th.invertible()) throw PreconditionError("kernel quadrature needs an invertible theta");
  if (D != th.dim()) throw PreconditionError("theta dimension mismatch");
  if (r != 1 && r != 2 && r != 4) throw PreconditionError("kernel resolution must be 1, 2 or 4");
  for (int mu = 0; mu < D; ++mu)
    if (lat.n(mu) > kQuadratureMaxPoints)
      throw ResourceGuardError("kernel quadrature limited to 32 points per axis");
  // the work is quadratic in the refined point count
  if (static_cast<double>(lat.size()) * std::pow(double(r), D) > kQuadratureMaxFinePoints)
    throw ResourceGuardError("kernel quadrature limited to " +
                             std::to_string(kQuadratureMaxFinePoints) + " refined points");

  const double s = literal_kernel ? -0.5 : 1.0;
  const Field ff = lattice::refine(f, r);
  const Field gf = lattice::refine(g, r);
  const Lattice& fine = ff.lattice();

  std::vector<int> M(D);
  std::vector<double> h(D);
  double w = 1.0, detA = 1.0;
  for (int mu = 0; mu < D; ++mu) {
    M[mu] = fine.n(mu);
    h[mu] = fine.spacing(mu);
    w *= h[mu];
  }
  for (int b = 0; b < th.blocks(); ++b) detA *= (s / th.block_theta(b)) * (s / th.block_theta(b));
  const double C = std::abs(detA) / std::pow(std::numbers::pi, D);

  // a(mu, nu) = (s Theta^{-1})_{mu nu}; only the partner axis couples
  auto partner = [](int mu) { return mu ^ 1; };
  auto a = [&](int mu, int nu) { return s * th.inverse(mu, nu); };

  // Ghat on the difference lattice, built axis by axis: y_mu pairs with d_{partner(mu)}
  std::vector<int> dims = M;
  std::vector<cplx> G(gf.values());
  for (int mu = 0; mu < D; ++mu) {
    const int nu = partner(mu);
    const int rows = 2 * M[nu] - 1;
    std::vector<cplx> W(std::size_t(rows) * M[mu]);
    for (int dr = 0; dr < rows; ++dr) {
      const double d = (dr - (M[nu] - 1)) * h[nu];
      for (int j = 0; j < M[mu]; ++j) {
        const double y = fine.coord(mu, j);
        W[std::size_t(dr) * M[mu] + j] = std::polar(h[mu], 2.0 * d * a(nu, mu) * y);
      }
    }
    G = contract(G, dims, mu, W, rows);
  }
  // axis mu of G now indexes d_{partner(mu)}
  std::vector<std::size_t> gstride(D, 1);
  for (int mu = D - 2; mu >= 0; --mu) gstride[mu] = gstride[mu + 1] * dims[mu + 1];

  // phase tables e^{2i x_mu a(mu,nu) z_nu}
  std::vector<std::vector<cplx>> P(D);
  for (int mu = 0; mu < D; ++mu) {
    const int nu = partner(mu);
    P[mu].resize(std::size_t(M[mu]) * lat.n(nu));
    for (int j = 0; j < M[mu]; ++j)
      for (int k = 0; k < lat.n(nu); ++k)
        P[mu][std::size_t(j) * lat.n(nu) + k] =
            std::polar(1.0, 2.0 * fine.coord(mu, j) * a(mu, nu) * lat.coord(nu, k));
  }

  Field out(lat);
  std::vector<int> zi(D), xi(D);
  for (std::size_t z = 0; z < lat.size(); ++z) {
    lat.unravel(z, zi.data());
    cplx acc = 0.0;
    for (std::size_t x = 0; x < fine.size(); ++x) {
      fine.unravel(x, xi.data());
      cplx ph = 1.0;
      std::size_t goff = 0;
      for (int mu = 0; mu < D; ++mu) {
        const int nu = partner(mu);
        ph *= P[mu][std::size_t(xi[mu]) * lat.n(nu) + zi[nu]];
        // Ghat axis mu holds d_nu = z_nu - x_nu
        goff += std::size_t(zi[nu] * r - xi[nu] + M[nu] - 1) * gstride[mu];
      }
      acc += ff[x] * ph * G[goff];
    }
    out[z] = C * w * acc;
  }
  return out;
}

}  // namespace mgw::moyal
