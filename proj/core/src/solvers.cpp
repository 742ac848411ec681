#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <tuple>

#include "mgw/gw_model.hpp"

namespace mgw::gw {
namespace {

// real spectral first-derivative matrix on n points of spacing h (Nyquist mode zeroed)
Eigen::MatrixXd derivative_matrix(int n, double h) {
  Eigen::MatrixXd D = Eigen::MatrixXd::Zero(n, n);
  const double dk = 2.0 * std::numbers::pi / (n * h);
  for (int j = 0; j < n; ++j)
    for (int l = 0; l < n; ++l) {
      double s = 0.0;
      for (int m = -n / 2 + 1; m < n / 2; ++m) s -= m * dk * std::sin(m * dk * (j - l) * h);
      D(j, l) = s / n;
    }
  return D;
}

// coefficient of x_mu^2 in sum_nu xt_nu^2 (block form has no cross terms)
double tilde_weight(const ModelParams& p, int mu) {
  double c = 0.0;
  for (int nu = 0; nu < p.theta.dim(); ++nu) {
    const double a = 2.0 * p.frame.scale * p.theta.inverse(nu, mu);
    c += a * a;
  }
  return c;
}

struct Axis {
  Eigen::VectorXd values;
  Eigen::MatrixXd vectors;
};

Axis axis_operator(const ModelParams& p, const Lattice& lat, int mu) {
  const int n = lat.n(mu);
  const Eigen::MatrixXd D = derivative_matrix(n, lat.spacing(mu));
  Eigen::MatrixXd H = -D * D;
  if (p.omega > 0.0) {
    const double w2 = 0.5 * p.omega * p.omega * tilde_weight(p, mu);
    for (int j = 0; j < n; ++j) H(j, j) += w2 * lat.coord(mu, j) * lat.coord(mu, j);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (H + H.transpose()));
  if (es.info() != Eigen::Success) throw ConvergenceError("dense eigen-solve failed");
  return {es.eigenvalues(), es.eigenvectors()};
}

void check_linear(const ModelParams& p, const Lattice& lat) {
  p.validate();
  if (p.lambda != 0.0) throw PreconditionError("linear eigenfixtures need lambda = 0");
  if (lat.dim() != 2 || p.theta.dim() != 2) throw PreconditionError("linear eigenfixtures need D = 2");
  for (int mu = 0; mu < 2; ++mu)
    if (lat.n(mu) > 64) throw ResourceGuardError("dense eigen-solve limited to N <= 64");
  for (double o : p.frame.offset)
    if (o != 0.0) throw PreconditionError("linear eigenfixtures need an unshifted frame");
}

std::vector<double> lowest_sums(const Eigen::VectorXd& a, const Eigen::VectorXd& b, int count) {
  std::vector<double> s;
  s.reserve(a.size() * b.size());
  for (int i = 0; i < a.size(); ++i)
    for (int j = 0; j < b.size(); ++j) s.push_back(a(i) + b(j));
  std::sort(s.begin(), s.end());
  s.resize(std::min<std::size_t>(s.size(), count));
  return s;
}

}  // namespace

LinearMode solve_linear_onshell(const ModelParams& p, const Lattice& lat, Parity sector, int index) {
  check_linear(p, lat);
  if (index < 0) throw PreconditionError("mode index must be non-negative");
  const Axis a0 = axis_operator(p, lat, 0), a1 = axis_operator(p, lat, 1);
  const bool iso = lat.n(0) == lat.n(1) && lat.length(0) == lat.length(1) &&
                   tilde_weight(p, 0) == tilde_weight(p, 1);

  std::vector<std::tuple<double, int, int>> modes;
  for (int i = 0; i < lat.n(0); ++i)
    for (int j = iso ? i : 0; j < lat.n(1); ++j)
      if ((i + j) % 2 == (sector == Parity::Odd ? 1 : 0))
        modes.emplace_back(a0.values(i) + a1.values(j), i, j);
  std::sort(modes.begin(), modes.end());
  if (index >= static_cast<int>(modes.size())) throw PreconditionError("mode index out of range");
  const auto [ev, i, j] = modes[index];

  const double s = 1.0 / std::sqrt(lat.spacing(0) * lat.spacing(1));
  Field phi(lat);
  const int n1 = lat.n(1);
  for (int x0 = 0; x0 < lat.n(0); ++x0)
    for (int x1 = 0; x1 < n1; ++x1) {
      cplx v = a0.vectors(x0, i) * a1.vectors(x1, j);
      if (iso && i != j) v = (v + cplx(0.0, 1.0) * a0.vectors(x0, j) * a1.vectors(x1, i)) / std::sqrt(2.0);
      phi[std::size_t(x0) * n1 + x1] = s * v;
    }
  phi *= 1.0 / l2_norm(phi);

  LinearMode m;
  m.eigenvalue = ev;
  m.mass_sq = -ev;
  m.i = i;
  m.j = j;
  m.fields = FieldPair::conjugate(phi);
  return m;
}

DualSpectra duality_spectra(const ModelParams& p, const Lattice& lat, int count) {
  check_linear(p, lat);
  DualSpectra out;
  const Axis a0 = axis_operator(p, lat, 0), a1 = axis_operator(p, lat, 1);
  out.position = lowest_sums(a0.values, a1.values, count);

  // exchanged operator in the Fourier representation: (Omega^2/2) p^2 becomes diagonal on the
  // momentum grid and xt^2 = c x^2 becomes -c d_k^2
  Eigen::VectorXd e[2];
  for (int mu = 0; mu < 2; ++mu) {
    const int n = lat.n(mu);
    const double dk = 2.0 * std::numbers::pi / lat.length(mu);
    const Eigen::MatrixXd Dk = derivative_matrix(n, dk);
    Eigen::MatrixXd H = -tilde_weight(p, mu) * (Dk * Dk);
    for (int j = 0; j < n; ++j) {
      const double k = (j - n / 2) * dk;
      H(j, j) += 0.5 * p.omega * p.omega * k * k;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (H + H.transpose()),
                                                     Eigen::EigenvaluesOnly);
    e[mu] = es.eigenvalues();
  }
  out.exchanged = lowest_sums(e[0], e[1], count);
  return out;
}

namespace {

using Vec = std::vector<cplx>;

cplx dot(const Vec& a, const Vec& b) {
  cplx s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}
double nrm(const Vec& a) { return std::sqrt(dot(a, a).real()); }
void axpy(Vec& y, cplx a, const Vec& x) {
  for (std::size_t i = 0; i < y.size(); ++i) y[i] += a * x[i];
}

struct System {
  const ModelParams& p;
  const StarBackend& b;
  Lattice lat;
  std::size_t n;
  double shift;

  FieldPair unpack(const Vec& u) const {
    return {Field(lat, Vec(u.begin(), u.begin() + n)), Field(lat, Vec(u.begin() + n, u.end()))};
  }
  static Vec pack(const Field& a, const Field& c) {
    Vec v(a.values());
    v.insert(v.end(), c.values().begin(), c.values().end());
    return v;
  }
  // the phi equation first, in the same slot order as the unknowns
  Vec residual(const Vec& u) const {
    const auto fp = unpack(u);
    return pack(el_residual_phibar(fp, p, b), el_residual_phi(fp, p, b));
  }
  Vec precondition(const Vec& v) const {
    const auto fp = unpack(v);
    return pack(lattice::screened_inverse(fp.phi, shift), lattice::screened_inverse(fp.phibar, shift));
  }
  double norm(const Vec& r) const { return nrm(r) * std::sqrt(lat.cell_volume()); }
};

// right-preconditioned restarted GMRES for J s = rhs with a central-difference Jacobian action
Vec gmres(const System& sys, const Vec& u, const Vec& rhs, double rtol, int restart, int cycles) {
  const double unorm = nrm(u);
  auto jv = [&](const Vec& v) {
    const double vn = nrm(v);
    if (vn == 0.0) return Vec(v.size(), 0.0);
    const double d = 1e-7 * (1.0 + unorm) / vn;
    Vec a(u), c(u);
    axpy(a, d, v);
    axpy(c, -d, v);
    Vec fa = sys.residual(a);
    const Vec fc = sys.residual(c);
    for (std::size_t i = 0; i < fa.size(); ++i) fa[i] = (fa[i] - fc[i]) / (2.0 * d);
    return fa;
  };
  const double bnorm = nrm(rhs);
  Vec x(rhs.size(), 0.0);
  if (bnorm == 0.0) return x;
  for (int cycle = 0; cycle < cycles; ++cycle) {
    Vec r(rhs);
    if (cycle > 0) axpy(r, -1.0, jv(sys.precondition(x)));
    const double beta = nrm(r);
    if (beta <= rtol * bnorm) break;
    std::vector<Vec> V{r};
    for (auto& z : V[0]) z /= beta;
    Eigen::MatrixXcd H = Eigen::MatrixXcd::Zero(restart + 1, restart);
    Eigen::VectorXcd y;
    int k = 0;
    for (; k < restart; ++k) {
      Vec w = jv(sys.precondition(V[k]));
      for (int i = 0; i <= k; ++i) {
        H(i, k) = dot(V[i], w);
        axpy(w, -H(i, k), V[i]);
      }
      H(k + 1, k) = nrm(w);
      Eigen::VectorXcd g = Eigen::VectorXcd::Zero(k + 2);
      g(0) = beta;
      y = H.topLeftCorner(k + 2, k + 1).colPivHouseholderQr().solve(g);
      const double res = (g - H.topLeftCorner(k + 2, k + 1) * y).norm();
      if (res <= rtol * bnorm || H(k + 1, k).real() <= 1e-14 * beta) {
        ++k;
        break;
      }
      for (auto& z : w) z /= H(k + 1, k);
      V.push_back(std::move(w));
    }
    Vec dx(rhs.size(), 0.0);
    for (int i = 0; i < y.size(); ++i) axpy(dx, y(i), V[i]);
    axpy(x, 1.0, dx);
  }
  return sys.precondition(x);
}

}  // namespace

NewtonResult solve_onshell_newton(const ModelParams& p, const FieldPair& seed, double tol,
                                  int max_iter, const StarBackend& b) {
  if (!(tol >= 1e-12)) throw PreconditionError("newton tolerance must be >= 1e-12");
  if (max_iter < 1) throw PreconditionError("max_iter must be positive");
  require_same_lattice(seed.phi, seed.phibar);
  const System sys{p, b, seed.lattice(), seed.phi.size(), std::abs(p.mass_sq) + 1.0};
  Vec u = System::pack(seed.phi, seed.phibar);
  Vec F = sys.residual(u);
  double fn = sys.norm(F);
  if (!std::isfinite(fn)) throw PreconditionError("seed residual is not finite");

  NewtonResult out;
  while (fn > tol) {
    if (out.iterations >= max_iter)
      throw ConvergenceError("newton did not converge within max_iter (residual " +
                             std::to_string(fn) + ")");
    Vec rhs(F);
    for (auto& z : rhs) z = -z;
    const Vec s = gmres(sys, u, rhs, std::min(1e-3, std::max(1e-10, 0.1 * fn)), 40, 6);
    double step = 1.0, trial_norm = 0.0;
    Vec trial;
    for (int ls = 0; ls < 12; ++ls, step *= 0.5) {
      trial = u;
      axpy(trial, step, s);
      const Vec Ft = sys.residual(trial);
      trial_norm = sys.norm(Ft);
      if (std::isfinite(trial_norm) && trial_norm < (1.0 - 1e-4 * step) * fn) {
        F = Ft;
        break;
      }
      trial_norm = -1.0;
    }
    if (trial_norm < 0.0) throw ConvergenceError("newton step failed: Jacobian singular or stagnation");
    u = std::move(trial);
    fn = trial_norm;
    ++out.iterations;
  }
  out.fields = sys.unpack(u);
  out.residual = fn;
  return out;
}

}  // namespace mgw::gw
