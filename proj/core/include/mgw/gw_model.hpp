#pragma once

#include <stdexcept>

#include "mgw/lattice.hpp"
#include "mgw/moyal.hpp"

namespace mgw {

struct ConvergenceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class DecayPolicy { Ignore, Warn, Error };

struct ModelParams {
  double mass_sq = 0.0;
  double omega = 0.0;
  double lambda = 0.0;
  ThetaStructure theta;
  moyal::TildeFrame frame;
  DecayPolicy decay = DecayPolicy::Warn;

  // throws on negative omega/lambda or omega > 0 with degenerate theta
  void validate() const;
  // degenerate theta forces omega = 0 (warning on stderr)
  ModelParams sanitized() const;
};

struct FieldPair {
  Field phi, phibar;
  static FieldPair conjugate(const Field& phi) { return {phi, mgw::conj(phi)}; }
  const Lattice& lattice() const { return phi.lattice(); }
};

// sqrt(|phi|^2 + |phibar|^2) in the lattice L2 norm
double norm(const FieldPair& fp);

namespace gw {

struct ActionParts {
  cplx kinetic, mass, harmonic, quartic_a, quartic_b;  // quartic_a: phi phib phi phib
  cplx total() const { return kinetic + mass + harmonic + quartic_a + quartic_b; }
};

ActionParts action_parts(const FieldPair& fp, const ModelParams& p,
                         const StarBackend& b = StarBackend::spectral());
cplx action(const FieldPair& fp, const ModelParams& p,
            const StarBackend& b = StarBackend::spectral());

// symmetrized density; with_mass = false drops the m^2 piece
Field lagrangian(const FieldPair& fp, const ModelParams& p, const StarBackend& b,
                 bool with_mass = true);

// interior L2 norm of (xt phi)*(xt phib) minus its four-term recast, summed over mu;
// flip_sign negates the last recast term
double harmonic_recast_residual(const FieldPair& fp, const ThetaStructure& th,
                                const StarBackend& b = StarBackend::spectral(),
                                bool flip_sign = false, const moyal::TildeFrame& fr = {});

// dS/dphi (a field led by -lap phib) and dS/dphib
Field el_residual_phi(const FieldPair& fp, const ModelParams& p,
                      const StarBackend& b = StarBackend::spectral());
Field el_residual_phibar(const FieldPair& fp, const ModelParams& p,
                         const StarBackend& b = StarBackend::spectral());
double el_residual_norm(const FieldPair& fp, const ModelParams& p,
                        const StarBackend& b = StarBackend::spectral());

// the same harmonic piece assembled from tilde words instead of the pointwise reduction
Field harmonic_el_words(const Field& f, const ModelParams& p,
                        const StarBackend& b = StarBackend::spectral());

Field constraint_field(const FieldPair& fp, const ModelParams& p, int rho,
                       const StarBackend& b = StarBackend::spectral());

struct Variation {
  cplx analytic, numeric;
  double defect() const { return std::abs(analytic - numeric); }
};

Variation variation_check(const FieldPair& fp, const ModelParams& p, const Field& dphi,
                          const Field& dphibar, const StarBackend& b = StarBackend::spectral(),
                          double eps = 1e-5);

struct LinearMode {
  double eigenvalue = 0.0;  // of -lap + (Omega^2/2) xt^2
  double mass_sq = 0.0;      // -eigenvalue: the shifted mass that puts the pair on-shell
  int i = 0, j = 0;          // 1D quantum numbers along x0, x1
  FieldPair fields;
};

enum class Parity { Even, Odd };

// D = 2, N <= 64; index counts modes of the given parity (i + j) by increasing eigenvalue
LinearMode solve_linear_onshell(const ModelParams& p, const Lattice& lat, Parity sector,
                                int index);

// lowest eigenvalues of the quadratic operator on x-space and of its x-tilde <-> p exchange
struct DualSpectra {
  std::vector<double> position, exchanged;
};
DualSpectra duality_spectra(const ModelParams& p, const Lattice& lat, int count);

struct NewtonResult {
  FieldPair fields;
  int iterations = 0;
  double residual = 0.0;
};

NewtonResult solve_onshell_newton(const ModelParams& p, const FieldPair& seed, double tol,
                                  int max_iter, const StarBackend& b = StarBackend::spectral());

}  // namespace gw
}  // namespace mgw
