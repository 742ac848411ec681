#include "mgw/noether.hpp"

#include <cmath>

namespace mgw {

RankTwoTensorField::RankTwoTensorField(const Lattice& lat)
    : lat_(lat), c_(std::size_t(lat.dim()) * lat.dim(), Field(lat)) {}

RankTwoTensorField& RankTwoTensorField::operator+=(const RankTwoTensorField& o) {
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}
RankTwoTensorField& RankTwoTensorField::operator-=(const RankTwoTensorField& o) {
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
  return *this;
}
RankTwoTensorField operator+(RankTwoTensorField a, const RankTwoTensorField& b) { return a += b; }
RankTwoTensorField operator-(RankTwoTensorField a, const RankTwoTensorField& b) { return a -= b; }

Field RankTwoTensorField::trace() const {
  Field t(lat_);
  for (int mu = 0; mu < dim(); ++mu) t += (*this)(mu, mu);
  return t;
}

double RankTwoTensorField::norm() const {
  double s = 0.0;
  for (const auto& f : c_) s += std::pow(l2_norm(f), 2);
  return std::sqrt(s);
}

double RankTwoTensorField::symmetry_defect() const {
  double m = 0.0;
  for (int r = 0; r < dim(); ++r)
    for (int mu = r + 1; mu < dim(); ++mu) m = std::max(m, l2_norm((*this)(r, mu) - (*this)(mu, r)));
  return m;
}

double VectorCurrent::norm() const {
  double s = 0.0;
  for (const auto& f : c_) s += std::pow(l2_norm(f), 2);
  return std::sqrt(s);
}

VectorCurrent operator-(const VectorCurrent& a, const VectorCurrent& b) {
  VectorCurrent r(a.lattice());
  for (int mu = 0; mu < a.dim(); ++mu) r[mu] = a[mu] - b[mu];
  return r;
}

namespace noether {
namespace {

using moyal::F;
using moyal::Xt;
using moyal::Letter;
using Word = std::vector<Letter>;

Field d(const Field& f, int mu) { return lattice::spectral_derivative(f, mu); }

Field ac(const Field& f, const Field& g, const ModelParams& p, const StarBackend& b) {
  return moyal::star_anticommutator(f, g, p.theta, b);
}
Field cm(const Field& f, const Field& g, const ModelParams& p, const StarBackend& b) {
  return moyal::star_commutator(f, g, p.theta, b);
}

// d_mu xt_nu in the model frame
double tilde_slope(const ModelParams& p, int nu, int mu) {
  return 2.0 * p.frame.scale * p.theta.inverse(nu, mu);
}

Field omega_sector(const FieldPair& fp, const ModelParams& p, int mu, const StarBackend& bk) {
  const Lattice& lat = fp.lattice();
  Field out(lat);
  if (p.omega == 0.0) return out;
  const moyal::WordContext ctx{p.theta, bk, p.frame};
  const Field &phi = fp.phi, &pb = fp.phibar;
  const Field a = d(phi, mu), b = d(pb, mu);
  const double w = p.omega * p.omega;
  for (int nu = 0; nu < lat.dim(); ++nu) {
    const Letter X = Xt(nu);
    auto com = [&](const Word& A, const Word& B) { return moyal::word_commutator(A, B, ctx); };
    Field P = 2.0 * com({X, F(pb)}, {X, F(a)});
    P += com({F(a), F(pb), X}, {X});
    P += com({X, X, F(pb)}, {F(a)});
    P += com({F(pb), X}, {X, F(a)});
    P += 2.0 * com({F(b), X}, {F(phi), X});
    P += com({F(b)}, {F(phi), X, X});
    P += com({F(b), X}, {X, F(phi)});
    P += com({X}, {X, F(phi), F(b)});
    P += 2.0 * com({X, F(phi)}, {X, F(b)});
    P += com({F(b), F(phi), X}, {X});
    P += com({X, X, F(phi)}, {F(b)});
    P += com({F(phi), X}, {X, F(b)});
    P += 2.0 * com({F(a), X}, {F(pb), X});
    P += com({F(a)}, {F(pb), X, X});
    P += com({F(a), X}, {X, F(pb)});
    P += com({X}, {X, F(pb), F(a)});
    out += (w / 32.0) * P;
    const double c = tilde_slope(p, nu, mu);
    if (c != 0.0) out -= c * gw::constraint_field(fp, p, nu, bk);
  }
  return out;
}

Field lambda_sector(const FieldPair& fp, const ModelParams& p, int mu, const StarBackend& bk) {
  const Lattice& lat = fp.lattice();
  if (p.lambda == 0.0) return Field(lat);
  const auto& th = p.theta;
  const Field &phi = fp.phi, &pb = fp.phibar;
  const Field a = d(phi, mu), b = d(pb, mu);
  auto s = [&](const Field& f, const Field& g) { return moyal::star(f, g, th, bk); };
  auto c = [&](const Field& f, const Field& g) { return cm(f, g, p, bk); };
  const Field A = s(phi, pb), B = s(pb, phi);
  Field r = c(s(B, pb), a);
  r += c(s(a, pb), A);
  r += 0.5 * c(s(pb, B), a);
  r += 0.5 * c(a, s(A, pb));
  r += 0.5 * c(s(b, phi), A);
  r += c(s(b, A), phi);
  r += 0.5 * c(phi, s(A, b));
  r += 0.5 * c(s(b, B), phi);
  r += 0.5 * c(B, s(phi, b));
  return (p.lambda / 48.0) * r;
}

Field paper_omega(const FieldPair& fp, const ModelParams& p, int mu, const StarBackend& bk) {
  const Lattice& lat = fp.lattice();
  Field out(lat);
  if (p.omega == 0.0) return out;
  const moyal::WordContext ctx{p.theta, bk, p.frame};
  const Field &phi = fp.phi, &pb = fp.phibar;
  const Field a = d(phi, mu), b = d(pb, mu);
  const Field ab = moyal::star(a, pb, p.theta, bk) + moyal::star(b, phi, p.theta, bk);
  const double w = p.omega * p.omega;
  for (int nu = 0; nu < lat.dim(); ++nu) {
    const Letter X = Xt(nu);
    auto com = [&](const Word& A, const Word& B) { return moyal::word_commutator(A, B, ctx); };
    Field s = com({X, X}, {F(ab)});
    s += com({X, F(pb)}, {F(a), X});
    s += com({X, F(phi)}, {F(b), X});
    s += com({X, F(a)}, {F(pb), X});
    s += com({X, F(b)}, {F(phi), X});
    const Field inner = moyal::word({F(a), X, F(pb)}, ctx) + moyal::word({F(b), X, F(phi)}, ctx);
    out -= (w / 16.0) * s;
    out -= (w / 8.0) * com({X}, {F(inner)});
  }
  return out;
}

Field paper_lambda(const FieldPair& fp, const ModelParams& p, int mu, const StarBackend& bk) {
  const Lattice& lat = fp.lattice();
  if (p.lambda == 0.0) return Field(lat);
  const auto& th = p.theta;
  const Field &phi = fp.phi, &pb = fp.phibar;
  const Field a = d(phi, mu), b = d(pb, mu);
  auto s = [&](const Field& f, const Field& g) { return moyal::star(f, g, th, bk); };
  auto c = [&](const Field& f, const Field& g) { return cm(f, g, p, bk); };
  const Field A = s(phi, pb), B = s(pb, phi);
  const Field u = s(a, pb) - s(phi, b), v = s(b, phi) - s(pb, a);
  Field r = c(A, u) + c(B, v) + 0.5 * c(A, v) + 0.5 * c(B, u);
  r += 0.5 * c(s(phi, phi), c(b, pb));
  r += 0.5 * c(s(pb, pb), c(a, phi));
  return (-p.lambda / 96.0) * r;
}

}  // namespace

RankTwoTensorField canonical_emt(const FieldPair& fp, const ModelParams& p, const StarBackend& b,
                                 bool with_mass) {
  const Lattice& lat = fp.lattice();
  const int D = lat.dim();
  const Field L = gw::lagrangian(fp, p, b, with_mass);
  std::vector<Field> a, c;
  for (int mu = 0; mu < D; ++mu) {
    a.push_back(d(fp.phi, mu));
    c.push_back(d(fp.phibar, mu));
  }
  RankTwoTensorField T(lat);
  for (int r = 0; r < D; ++r)
    for (int mu = 0; mu < D; ++mu) {
      Field t = 0.5 * ac(a[mu], c[r], p, b);
      t += 0.5 * ac(c[mu], a[r], p, b);
      if (r == mu) t -= L;
      T(r, mu) = std::move(t);
    }
  return T;
}

VectorCurrent emt_divergence(const RankTwoTensorField& T) {
  VectorCurrent v(T.lattice());
  for (int mu = 0; mu < T.dim(); ++mu)
    for (int r = 0; r < T.dim(); ++r) v[mu] += d(T(r, mu), r);
  return v;
}

VectorCurrent emt_divergence_stencil(const RankTwoTensorField& T) {
  const Lattice& lat = T.lattice();
  VectorCurrent v(lat);
  std::vector<int> idx(lat.dim());
  for (int mu = 0; mu < T.dim(); ++mu)
    for (int r = 0; r < T.dim(); ++r) {
      const Field& f = T(r, mu);
      const std::size_t st = lat.stride(r);
      const int n = lat.n(r);
      const double inv = 0.5 / lat.spacing(r);
      for (std::size_t i = 0; i < f.size(); ++i) {
        const int j = static_cast<int>((i / st) % n);
        const std::size_t up = j + 1 < n ? i + st : i + st - std::size_t(n) * st;
        const std::size_t dn = j > 0 ? i - st : i + std::size_t(n - 1) * st;
        v[mu][i] += inv * (f[up] - f[dn]);
      }
    }
  return v;
}

DivergenceParts divergence_parts(const FieldPair& fp, const ModelParams& p, int mu,
                                 const StarBackend& b) {
  const Lattice& lat = fp.lattice();
  if (mu < 0 || mu >= lat.dim()) throw PreconditionError("axis index out of range");
  if (p.omega > 0.0 && !p.theta.invertible())
    throw PreconditionError("omega > 0 needs an invertible theta");
  DivergenceParts out;
  const Field a = d(fp.phi, mu), c = d(fp.phibar, mu);
  out.el_completion = -0.5 * ac(a, gw::el_residual_phi(fp, p, b), p, b);
  out.el_completion -= 0.5 * ac(c, gw::el_residual_phibar(fp, p, b), p, b);
  out.omega_sector = omega_sector(fp, p, mu, b);
  out.lambda_sector = lambda_sector(fp, p, mu, b);
  return out;
}

Field divergence_rhs(const FieldPair& fp, const ModelParams& p, int mu, const StarBackend& b) {
  return divergence_parts(fp, p, mu, b).total();
}

Field paper_divergence_rhs(const FieldPair& fp, const ModelParams& p, int mu, const StarBackend& b) {
  if (mu < 0 || mu >= fp.lattice().dim()) throw PreconditionError("axis index out of range");
  return paper_omega(fp, p, mu, b) + paper_lambda(fp, p, mu, b);
}

RankTwoTensorField improvement_term(const FieldPair& fp, const ModelParams& p, const StarBackend& b) {
  const Lattice& lat = fp.lattice();
  const Field G = ac(fp.phi, fp.phibar, p, b);
  const Field lap = lattice::laplacian(G);
  RankTwoTensorField I(lat);
  std::vector<int> ord(lat.dim(), 0);
  for (int r = 0; r < lat.dim(); ++r)
    for (int mu = 0; mu < lat.dim(); ++mu) {
      ord.assign(lat.dim(), 0);
      ord[r] += 1;
      ord[mu] += 1;
      Field t = -1.0 * lattice::derivative(G, ord);
      if (r == mu) t += lap;
      I(r, mu) = (1.0 / 6.0) * t;
    }
  return I;
}

RankTwoTensorField improved_emt(const FieldPair& fp, const ModelParams& p, const StarBackend& b) {
  return canonical_emt(fp, p, b, false) + improvement_term(fp, p, b);
}

VectorCurrent improved_divergence(const FieldPair& fp, const ModelParams& p, const StarBackend& b) {
  const Lattice& lat = fp.lattice();
  VectorCurrent v(lat);
  const Field G = p.mass_sq != 0.0 ? ac(fp.phi, fp.phibar, p, b) : Field(lat);
  for (int mu = 0; mu < lat.dim(); ++mu) {
    v[mu] = divergence_rhs(fp, p, mu, b);
    if (p.mass_sq != 0.0) v[mu] += (0.5 * p.mass_sq) * d(G, mu);
  }
  return v;
}

RankTwoTensorField reconstruct_t(const VectorCurrent& dv, double mean_tol) {
  const Lattice& lat = dv.lattice();
  RankTwoTensorField t(lat);
  for (int mu = 0; mu < dv.dim(); ++mu) {
    const double scale = std::max(1.0, l2_norm(dv[mu]));
    if (std::abs(lattice::integrate(dv[mu])) > mean_tol * scale)
      throw PreconditionError("divergence has nonzero mean: input is off-shell or the formula is wrong");
    const Field u = lattice::inverse_laplacian(dv[mu]);
    for (int r = 0; r < dv.dim(); ++r) t(r, mu) = d(u, r);
  }
  return t;
}

RankTwoTensorField corrected_emt(const FieldPair& fp, const ModelParams& p, const StarBackend& b) {
  VectorCurrent dv = improved_divergence(fp, p, b);
  for (int mu = 0; mu < dv.dim(); ++mu) dv[mu] *= -1.0;
  return improved_emt(fp, p, b) + reconstruct_t(dv);
}

cplx slice_momentum(const RankTwoTensorField& T, int mu, int slice_index) {
  const Lattice& lat = T.lattice();
  if (mu < 0 || mu >= lat.dim()) throw PreconditionError("axis index out of range");
  if (slice_index < 0 || slice_index >= lat.n(0)) throw PreconditionError("slice index out of range");
  const Field& f = T(0, mu);
  const std::size_t st = lat.stride(0);
  cplx s = 0.0;
  for (std::size_t i = 0; i < st; ++i) s += f[std::size_t(slice_index) * st + i];
  double w = 1.0;
  for (int nu = 1; nu < lat.dim(); ++nu) w *= lat.spacing(nu);
  return w * s;
}

DilatationGenerators dilatation_generators(const FieldPair& fp, const ThetaStructure& th) {
  require_same_lattice(fp.phi, fp.phibar);
  auto gen = [&](const Field& f, bool left) {
    Field r = f;
    for (int mu = 0; mu < f.lattice().dim(); ++mu) {
      const Field g = d(f, mu);
      r += left ? moyal::coord_left(g, th, mu) : moyal::coord_right(g, th, mu);
    }
    return r;
  };
  return {gen(fp.phi, true), gen(fp.phi, false), gen(fp.phibar, true), gen(fp.phibar, false)};
}

VectorCurrent dilatation_current(const RankTwoTensorField& T, const ThetaStructure& th) {
  VectorCurrent v(T.lattice());
  for (int r = 0; r < T.dim(); ++r)
    for (int mu = 0; mu < T.dim(); ++mu)
      v[r] += 0.5 * (moyal::coord_left(T(r, mu), th, mu) + moyal::coord_right(T(r, mu), th, mu));
  return v;
}

namespace {

// -(1/2{D phi, E_phi} + 1/2{D phib, E_phib} + 1/2{xt_rho, C_rho})
Field el_breaking(const FieldPair& fp, const ModelParams& p, const StarBackend& b) {
  const Lattice& lat = fp.lattice();
  const auto g = dilatation_generators(fp, p.theta);
  Field r = 0.5 * ac(g.d1_phi, gw::el_residual_phi(fp, p, b), p, b);
  r += 0.5 * ac(g.d1_phibar, gw::el_residual_phibar(fp, p, b), p, b);
  if (p.omega != 0.0)
    for (int rho = 0; rho < lat.dim(); ++rho) {
      const Field C = gw::constraint_field(fp, p, rho, b);
      r += 0.5 * (moyal::tilde_left(C, p.theta, rho, p.frame) +
                  moyal::tilde_right(C, p.theta, rho, p.frame));
    }
  return -1.0 * r;
}

Field current_divergence(const VectorCurrent& v) {
  Field s(v.lattice());
  for (int r = 0; r < v.dim(); ++r) s += d(v[r], r);
  return s;
}

}  // namespace

Field derived_breaking_term(const FieldPair& fp, const ModelParams& p, const StarBackend& b) {
  const auto That = corrected_emt(fp, p, b);
  return el_breaking(fp, p, b) - current_divergence(dilatation_current(That, p.theta));
}

Field paper_breaking_term(const FieldPair& fp, const ModelParams& p, const StarBackend& bk) {
  const Lattice& lat = fp.lattice();
  const auto& th = p.theta;
  const Field &phi = fp.phi, &pb = fp.phibar;
  auto s = [&](const Field& f, const Field& g) { return moyal::star(f, g, th, bk); };
  auto a2 = [&](const Field& f, const Field& g) { return ac(f, g, p, bk); };
  const moyal::WordContext ctx{th, bk, p.frame};

  Field r = -1.0 * corrected_emt(fp, p, bk).trace();
  for (int mu = 0; mu < lat.dim(); ++mu) {
    const Field a = d(phi, mu), b = d(pb, mu);
    Field Q(lat);
    if (p.lambda != 0.0) {
      const Field A = s(phi, pb), B = s(pb, phi);
      Field q = s(a, 2.0 * s(B, pb) + a2(s(pb, pb), phi));
      q += s(b, 2.0 * s(A, phi) + a2(pb, s(phi, phi)));
      q -= 0.5 * d(a2(s(A, phi), pb), mu);
      q += 0.25 * d(a2(A, B) + a2(s(phi, phi), s(pb, pb)), mu);
      Q += (p.lambda / 48.0) * q;
    }
    if (p.omega != 0.0) {
      Field q(lat);
      const Field G = a2(pb, phi);
      for (int nu = 0; nu < lat.dim(); ++nu) {
        const Letter X = Xt(nu);
        Field inner = a2(moyal::tilde_left(phi, th, nu, p.frame), moyal::tilde_left(pb, th, nu, p.frame));
        inner += 0.5 * (moyal::word({X, F(G), X}, ctx) + moyal::word({X, X, F(G)}, ctx));
        q -= d(inner, mu);
        q += s(a, 2.0 * moyal::word({X, F(pb), X}, ctx) + moyal::word({F(pb), X, X}, ctx) +
                      moyal::word({X, X, F(pb)}, ctx));
        q += s(b, 2.0 * moyal::word({X, F(phi), X}, ctx) + moyal::word({F(phi), X, X}, ctx) +
                      moyal::word({X, X, F(phi)}, ctx));
      }
      Q += (p.omega * p.omega / 8.0) * q;
    }
    r -= 0.5 * (moyal::coord_left(Q, th, mu) + moyal::coord_right(Q, th, mu));
  }
  return r;
}

DilatationWard dilatation_ward_check(const FieldPair& fp, const ModelParams& p, const StarBackend& b,
                                     double eps) {
  const Lattice& lat = fp.lattice();
  DilatationWard w;
  const auto g = dilatation_generators(fp, p.theta);
  auto shifted = [&](double e) {
    ModelParams q = p;
    q.decay = DecayPolicy::Ignore;
    q.frame.scale *= 1.0 + e;
    for (auto& o : q.frame.offset) o *= 1.0 + e;
    return gw::action({fp.phi + e * g.d1_phi, fp.phibar + e * g.d1_phibar}, q, b);
  };
  w.numeric = (shifted(eps) - shifted(-eps)) / (2.0 * eps);
  w.analytic = lattice::integrate(pointwise(g.d1_phi, gw::el_residual_phi(fp, p, b))) +
               lattice::integrate(pointwise(g.d1_phibar, gw::el_residual_phibar(fp, p, b)));
  if (p.omega != 0.0)
    for (int rho = 0; rho < lat.dim(); ++rho)
      w.analytic += lattice::integrate(pointwise(moyal::tilde_coordinate(lat, p.theta, rho, p.frame),
                                                 gw::constraint_field(fp, p, rho, b)));
  const Field Bd = derived_breaking_term(fp, p, b);
  const Field Bp = paper_breaking_term(fp, p, b);
  w.derived_integral = lattice::integrate(Bd);
  w.paper_integral = lattice::integrate(Bp);
  const Field mask = lattice::interior_mask(lat, 0.125);
  w.paper_diff_norm = masked_l2_norm(Bp - Bd, mask);
  w.derived_norm = masked_l2_norm(Bd, mask);
  return w;
}

FieldPair gauge_transform(const FieldPair& fp, const Field& alpha, int K, const ThetaStructure& th,
                          const StarBackend& b) {
  require_same_lattice(fp.phi, alpha);
  const auto U = moyal::star_exponential(alpha, K, th, b, 1.0);
  const auto Ud = moyal::star_exponential(alpha, K, th, b, -1.0);
  return {moyal::star(U.value, fp.phi, th, b), moyal::star(fp.phibar, Ud.value, th, b)};
}

FieldPair gauge_variation(const FieldPair& fp, const Field& alpha, const ThetaStructure& th,
                          const StarBackend& b) {
  require_same_lattice(fp.phi, alpha);
  const cplx i(0.0, 1.0);
  return {i * moyal::star(alpha, fp.phi, th, b), -i * moyal::star(fp.phibar, alpha, th, b)};
}

VectorCurrent gauge_current(const FieldPair& fp, const ThetaStructure& th, const StarBackend& b) {
  VectorCurrent J(fp.lattice());
  const cplx i(0.0, 1.0);
  for (int mu = 0; mu < fp.lattice().dim(); ++mu)
    J[mu] = i * (moyal::star(fp.phi, d(fp.phibar, mu), th, b) -
                 moyal::star(d(fp.phi, mu), fp.phibar, th, b));
  return J;
}

Field gauge_divergence_leibniz(const FieldPair& fp, const ThetaStructure& th, const StarBackend& b) {
  const cplx i(0.0, 1.0);
  return i * (moyal::star(fp.phi, lattice::laplacian(fp.phibar), th, b) -
              moyal::star(lattice::laplacian(fp.phi), fp.phibar, th, b));
}

GaugeWard gauge_ward_check(const FieldPair& fp, const ModelParams& p, const Field& alpha, int K,
                           const StarBackend& b, double eps) {
  GaugeWard w;
  const auto dv = gauge_variation(fp, alpha, p.theta, b);
  w.variation = gw::variation_check(fp, p, dv.phi, dv.phibar, b, eps);
  w.before = gw::action_parts(fp, p, b);
  auto q = p;
  q.decay = DecayPolicy::Ignore;
  w.after = gw::action_parts(gauge_transform(fp, alpha, K, p.theta, b), q, b);
  const auto U = moyal::star_exponential(alpha, K, p.theta, b, 1.0);
  const auto Ud = moyal::star_exponential(alpha, K, p.theta, b, -1.0);
  w.unitarity_defect =
      max_abs(moyal::star(U.value, Ud.value, p.theta, b) - Field(alpha.lattice(), 1.0));
  // |U U^dag - 1| <= |U - u||U^dag| + |u||U^dag - u^dag|
  const double tau = std::max(U.truncation_bound, Ud.truncation_bound);
  w.truncation_bound = 2.0 * tau * std::max(1.0, max_abs(U.value)) + tau * tau;
  return w;
}

TranslationWard translation_ward_check(const FieldPair& fp, const ModelParams& p, int mu,
                                       const StarBackend& b, double eps) {
  const Lattice& lat = fp.lattice();
  if (mu < 0 || mu >= lat.dim()) throw PreconditionError("axis index out of range");
  TranslationWard w;
  const Field a = d(fp.phi, mu), c = d(fp.phibar, mu);
  w.field = gw::variation_check(fp, p, a, c, b, eps);
  w.constraint = 0.0;
  if (p.omega != 0.0)
    for (int nu = 0; nu < lat.dim(); ++nu) {
      const double s = tilde_slope(p, nu, mu);
      if (s != 0.0) w.constraint += s * lattice::integrate(gw::constraint_field(fp, p, nu, b));
    }
  w.analytic_total = w.field.analytic + w.constraint;
  auto shifted = [&](double e) {
    ModelParams q = p;
    q.decay = DecayPolicy::Ignore;
    if (q.frame.offset.empty()) q.frame.offset.assign(lat.dim(), 0.0);
    if (p.omega != 0.0)
      for (int nu = 0; nu < lat.dim(); ++nu) q.frame.offset[nu] += e * tilde_slope(p, nu, mu);
    return gw::action({fp.phi + e * a, fp.phibar + e * c}, q, b);
  };
  w.numeric_total = (shifted(eps) - shifted(-eps)) / (2.0 * eps);
  return w;
}

double belinfante_residual(const RankTwoTensorField& T, const std::vector<Field>& chi) {
  const int D = T.dim();
  if (static_cast<int>(chi.size()) != D * D * D) throw PreconditionError("chi needs D^3 components");
  auto at = [&](int s, int m, int r) -> const Field& { return chi[(std::size_t(s) * D + m) * D + r]; };
  double worst = 0.0;
  for (int m = 0; m < D; ++m)
    for (int r = m + 1; r < D; ++r) {
      Field lhs(T.lattice());
      for (int s = 0; s < D; ++s) lhs += d(at(s, m, r) - at(s, r, m), s);
      worst = std::max(worst, l2_norm(lhs - (T(r, m) - T(m, r))));
    }
  return worst;
}

}  // namespace noether
}  // namespace mgw
