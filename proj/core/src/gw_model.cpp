#include "mgw/gw_model.hpp"

#include <atomic>
#include <cmath>
#include <iostream>

namespace mgw {

void ModelParams::validate() const {
  if (!(omega >= 0.0)) throw PreconditionError("omega must be non-negative");
  if (!(lambda >= 0.0)) throw PreconditionError("lambda must be non-negative");
  if (!std::isfinite(mass_sq)) throw PreconditionError("mass_sq must be finite");
  if (omega > 0.0 && !theta.invertible())
    throw PreconditionError("omega > 0 needs an invertible theta");
  if (!frame.offset.empty() && static_cast<int>(frame.offset.size()) != theta.dim())
    throw PreconditionError("frame offset dimension");
}

ModelParams ModelParams::sanitized() const {
  ModelParams p = *this;
  if (p.omega > 0.0 && !p.theta.invertible()) {
    std::cerr << "warning: degenerate theta, omega forced to 0\n";
    p.omega = 0.0;
  }
  return p;
}

double norm(const FieldPair& fp) {
  const double a = l2_norm(fp.phi), b = l2_norm(fp.phibar);
  return std::sqrt(a * a + b * b);
}

namespace gw {
namespace {

void check_pair(const FieldPair& fp, const ModelParams& p) {
  require_same_lattice(fp.phi, fp.phibar);
  p.validate();
  if (p.theta.dim() != fp.lattice().dim()) throw PreconditionError("theta dimension mismatch");
  if (p.decay == DecayPolicy::Ignore) return;
  const double d = std::max(lattice::boundary_decay(fp.phi), lattice::boundary_decay(fp.phibar));
  if (d <= lattice::kDecayLimit) return;
  if (p.decay == DecayPolicy::Error) throw PreconditionError("field does not decay at the boundary");
  static std::atomic<bool> warned{false};
  if (!warned.exchange(true))
    std::cerr << "warning: boundary decay " << d << " exceeds " << lattice::kDecayLimit << "\n";
}

// sum_nu xt_nu^2 in the model frame
Field tilde_square(const Lattice& lat, const ModelParams& p) {
  Field s(lat);
  for (int nu = 0; nu < lat.dim(); ++nu) {
    auto x = moyal::tilde_coordinate(lat, p.theta, nu, p.frame);
    s += pointwise(x, x);
  }
  return s;
}

moyal::WordContext context(const ModelParams& p, const StarBackend& b) {
  return {p.theta, b, p.frame};
}

// dS/d(first slot): -lap(o) + m^2 o + lambda/48 (2 o s o + o o s + s o o) + Omega^2/2 xt^2 o
Field el_generic(const Field& s, const Field& o, const ModelParams& p, const StarBackend& b) {
  Field r = -lattice::laplacian(o);
  if (p.mass_sq != 0.0) r += p.mass_sq * o;
  if (p.omega != 0.0) r += (0.5 * p.omega * p.omega) * pointwise(tilde_square(o.lattice(), p), o);
  if (p.lambda != 0.0) {
    const Field os = moyal::star(o, s, p.theta, b);
    const Field so = moyal::star(s, o, p.theta, b);
    Field q = 2.0 * moyal::star(os, o, p.theta, b);
    q += moyal::star(o, os, p.theta, b);
    q += moyal::star(so, o, p.theta, b);
    r += (p.lambda / 48.0) * q;
  }
  return r;
}

}  // namespace

ActionParts action_parts(const FieldPair& fp, const ModelParams& p, const StarBackend& b) {
  check_pair(fp, p);
  const Lattice& lat = fp.lattice();
  ActionParts a{};
  for (int mu = 0; mu < lat.dim(); ++mu)
    a.kinetic += lattice::integrate(pointwise(lattice::spectral_derivative(fp.phi, mu),
                                              lattice::spectral_derivative(fp.phibar, mu)));
  const Field pp = pointwise(fp.phi, fp.phibar);
  if (p.mass_sq != 0.0) a.mass = p.mass_sq * lattice::integrate(pp);
  if (p.omega != 0.0)
    a.harmonic = 0.5 * p.omega * p.omega * lattice::integrate(pointwise(tilde_square(lat, p), pp));
  if (p.lambda != 0.0) {
    // the trace turns the outer star of each quartic word into a pointwise product
    const Field A = moyal::star(fp.phi, fp.phibar, p.theta, b);
    const Field B = moyal::star(fp.phibar, fp.phi, p.theta, b);
    a.quartic_a = p.lambda / 48.0 * lattice::integrate(pointwise(A, A));
    a.quartic_b = p.lambda / 48.0 * lattice::integrate(pointwise(A, B));
  }
  return a;
}

cplx action(const FieldPair& fp, const ModelParams& p, const StarBackend& b) {
  return action_parts(fp, p, b).total();
}

Field lagrangian(const FieldPair& fp, const ModelParams& p, const StarBackend& b, bool with_mass) {
  check_pair(fp, p);
  const Lattice& lat = fp.lattice();
  const auto& th = p.theta;
  Field L(lat);
  for (int mu = 0; mu < lat.dim(); ++mu)
    L += 0.5 * moyal::star_anticommutator(lattice::spectral_derivative(fp.phi, mu),
                                          lattice::spectral_derivative(fp.phibar, mu), th, b);
  if (with_mass && p.mass_sq != 0.0)
    L += (0.5 * p.mass_sq) * moyal::star_anticommutator(fp.phi, fp.phibar, th, b);
  if (p.omega != 0.0) {
    for (int nu = 0; nu < lat.dim(); ++nu) {
      const auto x = moyal::tilde_coordinate(lat, th, nu, p.frame);
      L += (0.25 * p.omega * p.omega) *
           moyal::star_anticommutator(pointwise(x, fp.phi), pointwise(x, fp.phibar), th, b);
    }
  }
  if (p.lambda != 0.0) {
    const Field A = moyal::star(fp.phi, fp.phibar, th, b);
    const Field B = moyal::star(fp.phibar, fp.phi, th, b);
    L += (p.lambda / 48.0) * (moyal::star(A, A, th, b) + moyal::star(A, B, th, b));
  }
  return L;
}

double harmonic_recast_residual(const FieldPair& fp, const ThetaStructure& th, const StarBackend& b,
                                bool flip_sign, const moyal::TildeFrame& fr) {
  require_same_lattice(fp.phi, fp.phibar);
  if (!th.invertible()) throw PreconditionError("recast needs an invertible theta");
  using moyal::F;
  using moyal::Xt;
  const Lattice& lat = fp.lattice();
  const moyal::WordContext ctx{th, b, fr};
  Field d(lat);
  for (int nu = 0; nu < lat.dim(); ++nu) {
    const auto x = moyal::tilde_coordinate(lat, th, nu, fr);
    d += moyal::star(pointwise(x, fp.phi), pointwise(x, fp.phibar), th, b);
    Field rhs = moyal::word({Xt(nu), F(fp.phi), Xt(nu), F(fp.phibar)}, ctx);
    rhs += moyal::word({Xt(nu), F(fp.phi), F(fp.phibar), Xt(nu)}, ctx);
    rhs += moyal::word({F(fp.phi), Xt(nu), Xt(nu), F(fp.phibar)}, ctx);
    const Field last = moyal::word({F(fp.phi), Xt(nu), F(fp.phibar), Xt(nu)}, ctx);
    if (flip_sign)
      rhs -= last;
    else
      rhs += last;
    d -= 0.25 * rhs;
  }
  return masked_l2_norm(d, lattice::interior_mask(lat, 0.125));
}

Field el_residual_phi(const FieldPair& fp, const ModelParams& p, const StarBackend& b) {
  check_pair(fp, p);
  return el_generic(fp.phi, fp.phibar, p, b);
}

Field el_residual_phibar(const FieldPair& fp, const ModelParams& p, const StarBackend& b) {
  check_pair(fp, p);
  return el_generic(fp.phibar, fp.phi, p, b);
}

double el_residual_norm(const FieldPair& fp, const ModelParams& p, const StarBackend& b) {
  const double a = l2_norm(el_residual_phi(fp, p, b));
  const double c = l2_norm(el_residual_phibar(fp, p, b));
  return std::sqrt(a * a + c * c);
}

Field harmonic_el_words(const Field& f, const ModelParams& p, const StarBackend& b) {
  using moyal::F;
  using moyal::Xt;
  const auto ctx = context(p, b);
  Field r(f.lattice());
  for (int nu = 0; nu < f.lattice().dim(); ++nu) {
    r += 2.0 * moyal::word({Xt(nu), F(f), Xt(nu)}, ctx);
    r += moyal::word({F(f), Xt(nu), Xt(nu)}, ctx);
    r += moyal::word({Xt(nu), Xt(nu), F(f)}, ctx);
  }
  return (p.omega * p.omega / 8.0) * r;
}

Field constraint_field(const FieldPair& fp, const ModelParams& p, int rho, const StarBackend& b) {
  check_pair(fp, p);
  const Lattice& lat = fp.lattice();
  if (rho < 0 || rho >= lat.dim()) throw PreconditionError("axis index out of range");
  if (p.omega == 0.0) return Field(lat);
  using moyal::F;
  using moyal::Xt;
  const auto ctx = context(p, b);
  const Field &f = fp.phi, &g = fp.phibar;
  Field r = 2.0 * moyal::word({F(f), Xt(rho), F(g)}, ctx);
  r += 2.0 * moyal::word({F(g), Xt(rho), F(f)}, ctx);
  r += moyal::word({F(f), F(g), Xt(rho)}, ctx);
  r += moyal::word({Xt(rho), F(f), F(g)}, ctx);
  r += moyal::word({Xt(rho), F(g), F(f)}, ctx);
  r += moyal::word({F(g), F(f), Xt(rho)}, ctx);
  return (p.omega * p.omega / 8.0) * r;
}

Variation variation_check(const FieldPair& fp, const ModelParams& p, const Field& dphi,
                          const Field& dphibar, const StarBackend& b, double eps) {
  require_same_lattice(fp.phi, dphi);
  require_same_lattice(fp.phi, dphibar);
  Variation v;
  v.analytic = lattice::integrate(pointwise(dphibar, el_residual_phibar(fp, p, b))) +
               lattice::integrate(pointwise(el_residual_phi(fp, p, b), dphi));
  if (max_abs(dphi) == 0.0 && max_abs(dphibar) == 0.0) return v;
  const FieldPair up{fp.phi + eps * dphi, fp.phibar + eps * dphibar};
  const FieldPair dn{fp.phi - eps * dphi, fp.phibar - eps * dphibar};
  auto q = p;
  q.decay = DecayPolicy::Ignore;
  v.numeric = (action(up, q, b) - action(dn, q, b)) / (2.0 * eps);
  return v;
}

}  // namespace gw
}  // namespace mgw
