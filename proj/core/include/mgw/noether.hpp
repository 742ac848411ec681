#pragma once

#include <vector>

#include "mgw/gw_model.hpp"

namespace mgw {

// components indexed (rho, mu)
class RankTwoTensorField {
 public:
  RankTwoTensorField() = default;
  explicit RankTwoTensorField(const Lattice& lat);

  const Lattice& lattice() const { return lat_; }
  int dim() const { return lat_.dim(); }
  Field& operator()(int rho, int mu) { return c_[rho * dim() + mu]; }
  const Field& operator()(int rho, int mu) const { return c_[rho * dim() + mu]; }

  RankTwoTensorField& operator+=(const RankTwoTensorField& o);
  RankTwoTensorField& operator-=(const RankTwoTensorField& o);

  Field trace() const;
  double norm() const;  // sqrt of the summed squared component norms
  double symmetry_defect() const;  // max over pairs of ||T_rm - T_mr||
  bool symmetric(double rel_tol = 1e-9) const { return symmetry_defect() <= rel_tol * norm(); }

 private:
  Lattice lat_;
  std::vector<Field> c_;
};

RankTwoTensorField operator+(RankTwoTensorField a, const RankTwoTensorField& b);
RankTwoTensorField operator-(RankTwoTensorField a, const RankTwoTensorField& b);

class VectorCurrent {
 public:
  VectorCurrent() = default;
  explicit VectorCurrent(const Lattice& lat) : lat_(lat), c_(lat.dim(), Field(lat)) {}

  const Lattice& lattice() const { return lat_; }
  int dim() const { return static_cast<int>(c_.size()); }
  Field& operator[](int mu) { return c_[mu]; }
  const Field& operator[](int mu) const { return c_[mu]; }
  double norm() const;

 private:
  Lattice lat_;
  std::vector<Field> c_;
};

VectorCurrent operator-(const VectorCurrent& a, const VectorCurrent& b);

namespace noether {

RankTwoTensorField canonical_emt(const FieldPair& fp, const ModelParams& p,
                                 const StarBackend& b = StarBackend::spectral(),
                                 bool with_mass = true);
// (d^rho T)_mu = sum_rho d_rho T_{rho mu}
VectorCurrent emt_divergence(const RankTwoTensorField& T);
// sum_rho d_rho T_{rho mu} by second-order central differences
VectorCurrent emt_divergence_stencil(const RankTwoTensorField& T);

struct DivergenceParts {
  Field el_completion;  // -1/2{d phi, E_phi} - 1/2{d phib, E_phib}
  Field omega_sector, lambda_sector;
  Field total() const { return el_completion + omega_sector + lambda_sector; }
  Field commutators() const { return omega_sector + lambda_sector; }
};

DivergenceParts divergence_parts(const FieldPair& fp, const ModelParams& p, int mu,
                                 const StarBackend& b = StarBackend::spectral());
// off-shell divergence identity, EL completion included
Field divergence_rhs(const FieldPair& fp, const ModelParams& p, int mu,
                     const StarBackend& b = StarBackend::spectral());
// the literal commutator sum (Omega and lambda sectors), without EL completion
Field paper_divergence_rhs(const FieldPair& fp, const ModelParams& p, int mu,
                           const StarBackend& b = StarBackend::spectral());

// (1/6)(g lap - d d){phi, phib}
RankTwoTensorField improvement_term(const FieldPair& fp, const ModelParams& p,
                                    const StarBackend& b = StarBackend::spectral());
RankTwoTensorField improved_emt(const FieldPair& fp, const ModelParams& p,
                                const StarBackend& b = StarBackend::spectral());
// divergence of the improved tensor from the identity: rhs + d_mu (m^2/2){phi, phib}
VectorCurrent improved_divergence(const FieldPair& fp, const ModelParams& p,
                                  const StarBackend& b = StarBackend::spectral());

// t_{rho mu} = d_rho lap^{-1} d_mu; throws when a component has nonzero mean
RankTwoTensorField reconstruct_t(const VectorCurrent& d, double mean_tol = 1e-9);
// T-hat = T^I + reconstruct_t(-improved_divergence)
RankTwoTensorField corrected_emt(const FieldPair& fp, const ModelParams& p,
                                 const StarBackend& b = StarBackend::spectral());

// prod_{nu != 0} h_nu sum over the slice x^0 = const of T_{0 mu}
cplx slice_momentum(const RankTwoTensorField& T, int mu, int slice_index);

struct DilatationGenerators {
  Field d1_phi, d2_phi, d1_phibar, d2_phibar;
};
DilatationGenerators dilatation_generators(const FieldPair& fp, const ThetaStructure& th);

// 1/2 {x^mu, T_{rho mu}}
VectorCurrent dilatation_current(const RankTwoTensorField& T, const ThetaStructure& th);

Field derived_breaking_term(const FieldPair& fp, const ModelParams& p,
                            const StarBackend& b = StarBackend::spectral());
Field paper_breaking_term(const FieldPair& fp, const ModelParams& p,
                          const StarBackend& b = StarBackend::spectral());

struct DilatationWard {
  cplx numeric;          // central difference of S under phi -> phi + eps D phi, xt -> (1+eps) xt
  cplx analytic;         // EL contraction plus int xt_rho C_rho
  cplx derived_integral;  // int of derived_breaking_term
  cplx paper_integral;
  double paper_diff_norm = 0.0;  // ||paper_breaking_term - derived_breaking_term|| on the interior mask
  double derived_norm = 0.0;
};
DilatationWard dilatation_ward_check(const FieldPair& fp, const ModelParams& p,
                                     const StarBackend& b = StarBackend::spectral(),
                                     double eps = 1e-5);

FieldPair gauge_transform(const FieldPair& fp, const Field& alpha, int K, const ThetaStructure& th,
                          const StarBackend& b = StarBackend::spectral());
// delta phi = i alpha * phi, delta phib = -i phib * alpha
FieldPair gauge_variation(const FieldPair& fp, const Field& alpha, const ThetaStructure& th,
                          const StarBackend& b = StarBackend::spectral());
// J_mu = i(phi * d_mu phib - d_mu phi * phib)
VectorCurrent gauge_current(const FieldPair& fp, const ThetaStructure& th,
                            const StarBackend& b = StarBackend::spectral());
// i(phi * lap phib - lap phi * phib)
Field gauge_divergence_leibniz(const FieldPair& fp, const ThetaStructure& th,
                               const StarBackend& b = StarBackend::spectral());

struct GaugeWard {
  gw::Variation variation;  // infinitesimal: EL contraction vs central difference
  gw::ActionParts before, after;  // finite transform of order K
  double unitarity_defect = 0.0;  // max |U*U^dagger - 1|
  double truncation_bound = 0.0;
};
GaugeWard gauge_ward_check(const FieldPair& fp, const ModelParams& p, const Field& alpha, int K,
                           const StarBackend& b = StarBackend::spectral(), double eps = 1e-5);

struct TranslationWard {
  gw::Variation field;        // phi -> phi + eps d_mu phi only
  cplx constraint;            // sum_nu (d_mu xt_nu) int C_nu
  cplx numeric_total, analytic_total;  // fields and x-tilde shifted together
};
TranslationWard translation_ward_check(const FieldPair& fp, const ModelParams& p, int mu,
                                       const StarBackend& b = StarBackend::spectral(),
                                       double eps = 1e-5);

// chi[(s * D + m) * D + r] = chi_{s m r}; returns max over pairs of
// ||sum_s d_s (chi_{s m r} - chi_{s r m}) - (T_{r m} - T_{m r})||
double belinfante_residual(const RankTwoTensorField& T, const std::vector<Field>& chi);

}  // namespace noether
}  // namespace mgw
