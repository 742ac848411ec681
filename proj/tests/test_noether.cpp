#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "mgw/fixtures.hpp"
#include "mgw/noether.hpp"

using namespace mgw;
using gw::Parity;

namespace {
const double kPi = std::numbers::pi;
Lattice desk() { return Lattice::cube(2, 64, 12.0); }

ModelParams params(double m2, double om, double lam, double theta = 1.0) {
  ModelParams p;
  p.mass_sq = m2;
  p.omega = om;
  p.lambda = lam;
  p.theta = ThetaStructure::uniform(2, theta);
  return p;
}

FieldPair pair_fixture(const Lattice& lat) {
  return {lattice::gaussian(lat, {0.3, -0.2}, 0.75, 1.0, {0.5, 0.0}) +
              lattice::gaussian(lat, {-0.3, 0.2}, 0.7, cplx(0.0, 0.6)),
          lattice::gaussian(lat, {0.1, 0.3}, 0.7, 0.8, {0.0, -0.4})};
}

struct Onshell {
  ModelParams p;
  FieldPair fp;
};

Onshell eigenfixture(Parity s, int k, double omega = 1.0) {
  auto base = params(0.0, omega, 0.0);
  auto m = gw::solve_linear_onshell(base, desk(), s, k);
  base.mass_sq = m.mass_sq;
  return {base, m.fields};
}

// x^0-only field: Gaussian profile along x^0, constant along x^1
Field profile(const Lattice& lat, double sigma, cplx amp) {
  Field f(lat);
  std::vector<int> idx(2);
  for (std::size_t i = 0; i < f.size(); ++i) {
    lat.unravel(i, idx.data());
    const double x = lat.coord(0, idx[0]) - 0.2;
    f[i] = amp * std::exp(-x * x / (2.0 * sigma * sigma));
  }
  return f;
}
}  // namespace

TEST(CanonicalEmt, ZeroField) {
  Field z(desk());
  auto T = noether::canonical_emt({z, z}, params(0.4, 1.0, 1.0));
  EXPECT_EQ(T.norm(), 0.0);
}

TEST(CanonicalEmt, Symmetric) {
  auto fp = pair_fixture(desk());
  auto T = noether::canonical_emt(fp, params(0.4, 1.0, 1.0));
  EXPECT_LE(T.symmetry_defect(), 1e-10 * T.norm());
  EXPECT_TRUE(T.symmetric());
}

TEST(CanonicalEmt, TraceIntegralRelation) {
  auto fp = pair_fixture(desk());
  auto p = params(0.4, 1.0, 1.0);
  auto T = noether::canonical_emt(fp, p);
  auto parts = gw::action_parts(fp, p);
  auto lhs = lattice::integrate(T.trace());
  EXPECT_LT(std::abs(lhs - (2.0 * parts.kinetic - 2.0 * parts.total())), 1e-10 * std::abs(lhs));
}

TEST(CanonicalEmt, CommutativeLimit) {
  auto lat = desk();
  auto fp = pair_fixture(lat);
  const double m2 = 0.4, lam = 1.0;
  auto T = noether::canonical_emt(fp, params(m2, 0.0, lam, 1e-3));
  std::vector<Field> a, b;
  for (int mu = 0; mu < 2; ++mu) {
    a.push_back(lattice::spectral_derivative(fp.phi, mu));
    b.push_back(lattice::spectral_derivative(fp.phibar, mu));
  }
  const Field pp = pointwise(fp.phi, fp.phibar);
  Field L = m2 * pp + (lam / 24.0) * pointwise(pp, pp);
  for (int mu = 0; mu < 2; ++mu) L += pointwise(a[mu], b[mu]);
  double num = 0.0, den = 0.0;
  for (int r = 0; r < 2; ++r)
    for (int mu = 0; mu < 2; ++mu) {
      Field c = pointwise(a[mu], b[r]) + pointwise(b[mu], a[r]);
      if (r == mu) c -= L;
      num += std::pow(l2_norm(T(r, mu) - c), 2);
      den += std::pow(l2_norm(c), 2);
    }
  EXPECT_LT(std::sqrt(num / den), 5e-3);
}

TEST(EmtDivergence, ConstantTensorAndStokes) {
  auto lat = desk();
  RankTwoTensorField C(lat);
  for (int r = 0; r < 2; ++r)
    for (int m = 0; m < 2; ++m) C(r, m) = Field(lat, cplx(1.0 + r, m));
  EXPECT_LT(noether::emt_divergence(C).norm(), 1e-12);

  auto T = noether::canonical_emt(pair_fixture(lat), params(0.4, 1.0, 1.0));
  auto d = noether::emt_divergence(T);
  for (int mu = 0; mu < 2; ++mu) EXPECT_LT(std::abs(lattice::integrate(d[mu])), 1e-11 * T.norm());
}

TEST(EmtDivergence, StencilCrossCheck) {
  auto lat = desk();
  FieldPair fp{lattice::gaussian(lat, {0.3, -0.2}, 1.0, 1.0, {0.3, 0.0}),
               lattice::gaussian(lat, {0.1, 0.3}, 1.0, 0.8)};
  auto T = noether::canonical_emt(fp, params(0.4, 1.0, 0.0));
  auto d = noether::emt_divergence(T);
  auto s = noether::emt_divergence_stencil(T);
  // the central-difference error is (h^2/6) d^3 T to leading order
  auto leading = [](const RankTwoTensorField& t) {
    VectorCurrent v(t.lattice());
    const double h = t.lattice().spacing(0);
    for (int mu = 0; mu < 2; ++mu)
      for (int r = 0; r < 2; ++r) {
        std::vector<int> o(2, 0);
        o[r] = 3;
        v[mu] += (h * h / 6.0) * lattice::derivative(t(r, mu), o);
      }
    return v;
  };
  EXPECT_LT((s - d - leading(T)).norm(), 1e-3 * d.norm());
  auto fine = Lattice::cube(2, 128, 12.0);
  FieldPair ff{lattice::gaussian(fine, {0.3, -0.2}, 1.0, 1.0, {0.3, 0.0}),
               lattice::gaussian(fine, {0.1, 0.3}, 1.0, 0.8)};
  auto Tf = noether::canonical_emt(ff, params(0.4, 1.0, 0.0));
  auto df = noether::emt_divergence(Tf);
  auto sf = noether::emt_divergence_stencil(Tf);
  EXPECT_LT((sf - df - leading(Tf)).norm(), 1e-4 * df.norm());
  // second order: halving h cuts the gap by ~4
  const double ratio = (d - s).norm() / (df - sf).norm();
  EXPECT_GT(ratio, 3.5);
  EXPECT_LT(ratio, 4.5);
}

TEST(DivergenceRhs, SingleVariableFieldsCommute) {
  auto lat = desk();
  FieldPair fp{profile(lat, 0.8, 1.0), conj(profile(lat, 0.7, cplx(0.5, 0.5)))};
  auto p = params(0.3, 0.0, 1.0);
  p.decay = DecayPolicy::Ignore;
  for (int mu = 0; mu < 2; ++mu) {
    auto parts = noether::divergence_parts(fp, p, mu);
    EXPECT_LT(max_abs(parts.commutators()), 1e-12);
    EXPECT_LT(max_abs(noether::paper_divergence_rhs(fp, p, mu)), 1e-12);
  }
}

TEST(DivergenceRhs, CommutatorsAreTraceless) {
  auto fp = pair_fixture(desk());
  auto p = params(0.4, 1.0, 1.0);
  for (int mu = 0; mu < 2; ++mu) {
    auto parts = noether::divergence_parts(fp, p, mu);
    EXPECT_LT(std::abs(lattice::integrate(parts.total())), 1e-9);
    EXPECT_LT(std::abs(lattice::integrate(parts.lambda_sector)), 1e-9);
    EXPECT_LT(std::abs(lattice::integrate(noether::paper_divergence_rhs(fp, p, mu))), 1e-9);
  }
}

TEST(DivergenceRhs, OffShellIdentity) {
  std::mt19937_64 rng(41);
  auto lat = desk();
  for (int t = 0; t < 3; ++t) {
    FieldPair fp{fixtures::random_field(lat, rng), fixtures::random_field(lat, rng)};
    auto p = params(0.7, 1.0, 1.0);
    auto d = noether::emt_divergence(noether::canonical_emt(fp, p));
    for (int mu = 0; mu < 2; ++mu)
      EXPECT_LE(l2_norm(d[mu] - noether::divergence_rhs(fp, p, mu)), 1e-7 * l2_norm(d[mu]));
  }
}

TEST(DivergenceRhs, OnShellIdentity) {
  for (auto [s, k] : {std::pair{Parity::Even, 1}, std::pair{Parity::Odd, 0}}) {
    auto f = eigenfixture(s, k);
    const double tol = std::max(1e-7, 10.0 * gw::el_residual_norm(f.fp, f.p));
    auto d = noether::emt_divergence(noether::canonical_emt(f.fp, f.p));
    for (int mu = 0; mu < 2; ++mu) {
      auto parts = noether::divergence_parts(f.fp, f.p, mu);
      EXPECT_LE(l2_norm(parts.el_completion), tol);
      EXPECT_LE(l2_norm(d[mu] - parts.commutators()), tol);
    }
  }
}

TEST(Improved, AddedPieceIsDivergenceFree) {
  auto fp = pair_fixture(desk());
  auto I = noether::improvement_term(fp, params(0.4, 1.0, 1.0));
  EXPECT_LE(noether::emt_divergence(I).norm(), 1e-10 * std::max(1.0, I.norm()));
}

TEST(Improved, TraceIsNonzeroAtSelfDuality) {
  auto f = eigenfixture(Parity::Even, 1);
  auto T = noether::improved_emt(f.fp, f.p);
  EXPECT_GT(l2_norm(T.trace()), 1e-3 * T.norm());
}

TEST(Improved, TwoDimensionalTraceIsTheImprovement) {
  // in D = 2 the massless free canonical part is traceless, leaving (1/6) lap {phi, phib}
  auto fp = pair_fixture(desk());
  auto p = params(0.4, 0.0, 0.0);
  auto T = noether::improved_emt(fp, p);
  auto expect = (1.0 / 6.0) * lattice::laplacian(moyal::star_anticommutator(fp.phi, fp.phibar, p.theta));
  EXPECT_LT(max_abs(T.trace() - expect), 1e-10 * max_abs(expect));
}

TEST(Reconstruct, ZeroAndGradientSources) {
  auto lat = desk();
  VectorCurrent z(lat);
  EXPECT_EQ(noether::reconstruct_t(z).norm(), 0.0);

  auto g = lattice::gaussian(lat, {0.2, 0.1}, 0.8, 1.0);
  VectorCurrent d(lat);
  for (int mu = 0; mu < 2; ++mu) d[mu] = lattice::spectral_derivative(g, mu);
  auto t = noether::reconstruct_t(d);
  EXPECT_LE((noether::emt_divergence(t) - d).norm(), 1e-9 * d.norm());
  auto ig = lattice::inverse_laplacian(g);
  EXPECT_LT(max_abs(t(0, 1) - lattice::derivative(ig, {1, 1})), 1e-10);
}

TEST(Reconstruct, RejectsNonzeroMean) {
  auto lat = desk();
  VectorCurrent d(lat);
  d[0] = lattice::gaussian(lat, {0.0, 0.0}, 0.8, 1.0);
  EXPECT_THROW(noether::reconstruct_t(d), PreconditionError);
}

TEST(Corrected, LocallyConservedAndNotSymmetric) {
  // the lowest odd mode has a rotation-invariant |phi|^2 and gives a symmetric tensor
  auto f = eigenfixture(Parity::Even, 1);
  auto T = noether::corrected_emt(f.fp, f.p);
  EXPECT_LE(noether::emt_divergence(T).norm(), 1e-8);
  EXPECT_GT(T.symmetry_defect(), 1e-4 * T.norm());
}

TEST(SliceMomentum, ConstantTensor) {
  auto lat = desk();
  RankTwoTensorField T(lat);
  for (int r = 0; r < 2; ++r)
    for (int m = 0; m < 2; ++m) T(r, m) = Field(lat, 0.5);
  for (int s : {0, 17, 63}) EXPECT_NEAR(noether::slice_momentum(T, 1, s).real(), 6.0, 1e-13);
  EXPECT_THROW(noether::slice_momentum(T, 0, 64), PreconditionError);
}

TEST(SliceMomentum, ConservedOnSingleVariableProfile) {
  // real periodic profile of -phi'' + m^2 phi + (lambda/12) phi^3 = 0 close to cos(k x^0)
  auto lat = desk();
  const double k = 2.0 * kPi / 12.0, delta = 0.01, lam = 0.1;
  auto p = params(-k * k - delta, 0.0, lam);
  p.decay = DecayPolicy::Ignore;
  const double A = std::sqrt(16.0 * delta / lam);
  Field seed(lat);
  std::vector<int> idx(2);
  for (std::size_t i = 0; i < seed.size(); ++i) {
    lat.unravel(i, idx.data());
    seed[i] = A * std::cos(k * lat.coord(0, idx[0]));
  }
  auto r = gw::solve_onshell_newton(p, FieldPair::conjugate(seed), 1e-11, 20);
  auto T = noether::canonical_emt(r.fields, p);
  std::vector<double> v;
  for (int s = 0; s < 64; ++s) v.push_back(noether::slice_momentum(T, 0, s).real());
  const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  EXPECT_LE(*hi - *lo, 1e-8 * std::abs(*hi));
  EXPECT_GT(max_abs(r.fields.phi - seed), 1e-3 * A);

  // ODE first integral |phi'|^2 - m^2 |phi|^2 - (lambda/24)|phi|^4 at x^0 = x_0
  const cplx f = r.fields.phi[0], df = lattice::spectral_derivative(r.fields.phi, 0)[0];
  const double E = std::norm(df) - p.mass_sq * std::norm(f) - lam / 24.0 * std::pow(std::norm(f), 2);
  EXPECT_NEAR(v[0], 12.0 * E, 1e-9 * std::abs(v[0]));
}

TEST(SliceMomentum, OffShellNegativeControl) {
  std::mt19937_64 rng(43);
  auto lat = desk();
  auto fp = FieldPair::conjugate(fixtures::random_field(lat, rng));
  auto T = noether::canonical_emt(fp, params(0.4, 1.0, 1.0));
  std::vector<double> v;
  for (int s = 0; s < 64; ++s) v.push_back(noether::slice_momentum(T, 0, s).real());
  const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  EXPECT_GT(*hi - *lo, 1e-3 * std::max(std::abs(*hi), std::abs(*lo)));
}

TEST(Dilatation, GeneratorsAgree) {
  auto fp = pair_fixture(desk());
  auto g = noether::dilatation_generators(fp, ThetaStructure::uniform(2, 1.0));
  EXPECT_LT(max_abs(g.d1_phi - g.d2_phi), 1e-10);
  EXPECT_LT(max_abs(g.d1_phibar - g.d2_phibar), 1e-10);

  auto c = noether::dilatation_generators(fp, ThetaStructure::uniform(2, 0.0));
  Field classical = fp.phi;
  for (int mu = 0; mu < 2; ++mu)
    classical += pointwise(lattice::coordinate_field(desk(), mu), lattice::spectral_derivative(fp.phi, mu));
  EXPECT_LT(max_abs(c.d1_phi - classical), 1e-12);
  EXPECT_LT(max_abs(c.d2_phi - classical), 1e-12);
}

TEST(Dilatation, GaussianScalingMoment) {
  // int f (f + x.grad f) = (1 - D/2) int f^2 = 0 in D = 2
  auto lat = desk();
  auto f = lattice::gaussian(lat, {0.0, 0.0}, 0.8, 1.0);
  auto g = noether::dilatation_generators(FieldPair::conjugate(f), ThetaStructure::uniform(2, 1.0));
  const double norm2 = lattice::integrate(pointwise(f, f)).real();
  EXPECT_LT(std::abs(lattice::integrate(pointwise(conj(f), g.d1_phi))), 1e-6 * norm2);
}

TEST(Dilatation, CurrentBasics) {
  auto lat = desk();
  auto th = ThetaStructure::uniform(2, 1.0);
  RankTwoTensorField z(lat);
  EXPECT_EQ(noether::dilatation_current(z, th).norm(), 0.0);

  auto T = noether::canonical_emt(pair_fixture(lat), params(0.4, 1.0, 1.0));
  auto Dc = noether::dilatation_current(T, th);
  Field div(lat);
  for (int r = 0; r < 2; ++r) div += lattice::spectral_derivative(Dc[r], r);
  EXPECT_LT(std::abs(lattice::integrate(div)), 1e-10 * Dc.norm());

  auto D0 = noether::dilatation_current(T, ThetaStructure::uniform(2, 0.0));
  for (int r = 0; r < 2; ++r) {
    Field expect(lat);
    for (int mu = 0; mu < 2; ++mu) expect += pointwise(lattice::coordinate_field(lat, mu), T(r, mu));
    EXPECT_LT(max_abs(D0[r] - expect), 1e-12 * max_abs(expect));
  }
}

TEST(Dilatation, WardIdentityOffShell) {
  auto fp = pair_fixture(desk());
  auto w = noether::dilatation_ward_check(fp, params(0.5, 1.0, 1.0));
  EXPECT_LT(std::abs(w.numeric - w.analytic), 1e-6 * std::abs(w.analytic));
  EXPECT_LT(std::abs(w.numeric + w.derived_integral), 1e-6 * std::abs(w.numeric));
}

TEST(Dilatation, BrokenAtSelfDuality) {
  auto f = eigenfixture(Parity::Even, 0);
  auto w = noether::dilatation_ward_check(f.fp, f.p);
  EXPECT_GT(std::abs(w.derived_integral), 1e-3);
  EXPECT_LT(std::abs(w.numeric + w.derived_integral), 1e-6 * std::abs(w.numeric));
  // on-shell only the x-tilde block survives: int xt.C = 2 S_harm
  auto parts = gw::action_parts(f.fp, f.p);
  EXPECT_LT(std::abs(w.analytic - 2.0 * parts.harmonic), 1e-8 * std::abs(w.analytic));
}

TEST(Gauge, IdentityAndConstantPhase) {
  auto lat = desk();
  auto fp = pair_fixture(lat);
  auto th = ThetaStructure::uniform(2, 1.0);
  auto id = noether::gauge_transform(fp, Field(lat), 10, th);
  EXPECT_LT(max_abs(id.phi - fp.phi), 1e-15);
  auto ph = noether::gauge_transform(fp, Field(lat, 0.5), 12, th);
  EXPECT_LT(max_abs(ph.phi - std::polar(1.0, 0.5) * fp.phi), 1e-10);
  EXPECT_LT(max_abs(ph.phibar - std::polar(1.0, -0.5) * fp.phibar), 1e-10);
}

TEST(Gauge, TermByTermInvariance) {
  std::mt19937_64 rng(47);
  auto lat = desk();
  auto fp = pair_fixture(lat);
  auto p = params(0.4, 1.0, 1.0);
  auto alpha = fixtures::random_real(lat, rng, 1.0);
  alpha *= 0.1 / l2_norm(alpha);
  auto w = noether::gauge_ward_check(fp, p, alpha, 10);
  EXPECT_LE(w.unitarity_defect, std::max(w.truncation_bound, 1e-13));
  EXPECT_LT(std::abs(w.after.mass - w.before.mass), 1e-8);
  EXPECT_LT(std::abs(w.after.quartic_a - w.before.quartic_a), 1e-8);
  EXPECT_GT(std::abs(w.after.kinetic - w.before.kinetic), 1e-6);
}

TEST(Gauge, SecondQuarticOrderingFirstOrderShift) {
  // delta int phi phib phib phi = i int alpha (phi phib phib phi - phib phi phi phib)
  std::mt19937_64 rng(53);
  auto lat = desk();
  auto fp = pair_fixture(lat);
  auto th = ThetaStructure::uniform(2, 1.0);
  auto p = params(0.0, 0.0, 48.0);
  auto alpha = fixtures::random_real(lat, rng, 0.3);
  auto dv = noether::gauge_variation(fp, alpha, th);
  const double eps = 1e-5;
  auto up = gw::action_parts({fp.phi + eps * dv.phi, fp.phibar + eps * dv.phibar}, p);
  auto dn = gw::action_parts({fp.phi - eps * dv.phi, fp.phibar - eps * dv.phibar}, p);
  auto fd = (up.quartic_b - dn.quartic_b) / (2.0 * eps);
  auto A = moyal::star(fp.phi, fp.phibar, th), B = moyal::star(fp.phibar, fp.phi, th);
  auto w1 = moyal::star(A, B, th), w2 = moyal::star(B, A, th);
  auto expect = cplx(0.0, 1.0) * lattice::integrate(pointwise(alpha, w1 - w2));
  EXPECT_GT(std::abs(expect), 1e-4);
  EXPECT_LT(std::abs(fd - expect), 1e-6 * std::abs(expect));
}

TEST(Gauge, CurrentIdentities) {
  auto lat = desk();
  auto th = ThetaStructure::uniform(2, 1.0);
  auto fp = pair_fixture(lat);
  auto J = noether::gauge_current(fp, th);
  Field div(lat);
  for (int mu = 0; mu < 2; ++mu) div += lattice::spectral_derivative(J[mu], mu);
  EXPECT_LT(max_abs(div - noether::gauge_divergence_leibniz(fp, th)), 1e-10);
  EXPECT_LT(std::abs(lattice::integrate(div)), 1e-11);

  auto real = lattice::gaussian(lat, {0.2, 0.0}, 0.8, 1.0);
  auto J0 = noether::gauge_current({real, real}, ThetaStructure::uniform(2, 0.0));
  EXPECT_LT(J0.norm(), 1e-13);
}

TEST(Gauge, PlaneWaveCurrent) {
  auto lat = desk();
  auto wave = lattice::plane_wave(lat, {2, -1});
  auto J = noether::gauge_current(FieldPair::conjugate(wave), ThetaStructure::uniform(2, 1.0));
  const double k[2] = {2.0 * kPi / 12.0 * 2, -2.0 * kPi / 12.0};
  for (int mu = 0; mu < 2; ++mu) EXPECT_LT(max_abs(J[mu] - Field(lat, 2.0 * k[mu])), 1e-10);
}

TEST(Gauge, OnShellFreeCurrentIsConserved) {
  auto f = eigenfixture(Parity::Odd, 0, 0.0);
  f.p.decay = DecayPolicy::Ignore;
  const double res = gw::el_residual_norm(f.fp, f.p);
  auto J = noether::gauge_current(f.fp, f.p.theta);
  Field div(desk());
  for (int mu = 0; mu < 2; ++mu) div += lattice::spectral_derivative(J[mu], mu);
  EXPECT_LE(l2_norm(div), std::max(1e-10, 10.0 * res));
}

TEST(Gauge, WardCheck) {
  std::mt19937_64 rng(59);
  auto lat = desk();
  auto fp = pair_fixture(lat);
  auto p = params(0.4, 1.0, 1.0);
  auto c = noether::gauge_ward_check(fp, p, Field(lat, 0.3), 10);
  EXPECT_LT(std::abs(c.variation.numeric), 1e-10);
  EXPECT_LT(std::abs(c.variation.analytic), 1e-10);

  auto alpha = fixtures::random_real(lat, rng, 0.5);
  auto w = noether::gauge_ward_check(fp, p, alpha, 10);
  EXPECT_LT(w.variation.defect(), 1e-6 * std::abs(w.variation.analytic));

  auto f = eigenfixture(Parity::Even, 1);
  auto on = noether::gauge_ward_check(f.fp, f.p, alpha, 10);
  EXPECT_LE(std::abs(on.variation.numeric), 1e-8);
  EXPECT_LE(std::abs(on.variation.analytic), 1e-8);
}

TEST(TranslationWard, ClosedSystemWithoutOmega) {
  auto f = eigenfixture(Parity::Odd, 0, 0.0);
  f.p.decay = DecayPolicy::Ignore;
  for (int mu = 0; mu < 2; ++mu) {
    auto w = noether::translation_ward_check(f.fp, f.p, mu);
    EXPECT_LE(std::abs(w.field.numeric), 1e-8);
    EXPECT_LE(std::abs(w.field.analytic), 1e-8);
    EXPECT_EQ(std::abs(w.constraint), 0.0);
  }
}

TEST(TranslationWard, CenteredEvenFixture) {
  auto g = lattice::gaussian(desk(), {0.0, 0.0}, 0.7, 1.0);
  auto p = params(0.4, 1.0, 1.0);
  for (int mu = 0; mu < 2; ++mu) {
    auto w = noether::translation_ward_check({g, g}, p, mu);
    EXPECT_LE(std::abs(w.constraint), 1e-8);
    EXPECT_LE(std::abs(w.field.numeric), 1e-8);
    EXPECT_LE(std::abs(w.field.analytic), 1e-8);
  }
}

TEST(TranslationWard, OffCenterFixtureIsNotClosed) {
  auto fp = pair_fixture(desk());
  auto p = params(0.4, 1.0, 1.0);
  for (int mu = 0; mu < 2; ++mu) {
    auto w = noether::translation_ward_check(fp, p, mu);
    EXPECT_GT(std::abs(w.field.numeric), 1e-3);
    EXPECT_LT(w.field.defect(), 1e-6 * std::abs(w.field.analytic));
    // shifting x-tilde along with the fields restores the symmetry
    EXPECT_LT(std::abs(w.field.analytic + w.constraint), 1e-9 * std::abs(w.constraint));
    EXPECT_LT(std::abs(w.numeric_total), 1e-8 * std::abs(w.constraint));
    EXPECT_LT(std::abs(w.analytic_total), 1e-8 * std::abs(w.constraint));
  }
}

TEST(Belinfante, SymmetricTensorHasNoDefect) {
  auto T = noether::canonical_emt(pair_fixture(desk()), params(0.4, 1.0, 1.0));
  std::vector<Field> chi(8, Field(desk()));
  EXPECT_LE(noether::belinfante_residual(T, chi), 1e-10 * T.norm());

  auto f = eigenfixture(Parity::Odd, 0);
  auto Th = noether::corrected_emt(f.fp, f.p);
  EXPECT_NEAR(noether::belinfante_residual(Th, chi), Th.symmetry_defect(), 1e-14);
}
