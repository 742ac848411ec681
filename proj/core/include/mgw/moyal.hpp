#pragma once

#include <string>
#include <vector>

#include "mgw/lattice.hpp"

namespace mgw {

class ThetaStructure {
 public:
  ThetaStructure() = default;
  // one theta per coordinate pair (x^{2b}, x^{2b+1}); odd D leaves the last axis commutative
  ThetaStructure(int D, std::vector<double> block_thetas);
  static ThetaStructure uniform(int D, double theta);

  int dim() const { return d_; }
  int blocks() const { return static_cast<int>(th_.size()); }
  double block_theta(int b) const { return th_[b]; }
  const std::vector<double>& block_thetas() const { return th_; }
  bool invertible() const;

  double operator()(int mu, int nu) const { return m_[mu * d_ + nu]; }
  // (Theta^{-1})_{mu nu}; throws when degenerate
  double inverse(int mu, int nu) const;
  double det() const;

  ThetaStructure scaled(double s) const;

 private:
  int d_ = 0;
  std::vector<double> th_;
  std::vector<double> m_, inv_;
};

enum class BackendKind { SpectralTwisted, SeriesOrder, KernelQuadrature };

struct StarBackend {
  BackendKind kind = BackendKind::SpectralTwisted;
  int order = 4;        // SeriesOrder K
  int refine = 1;       // KernelQuadrature r
  bool literal_kernel = false;

  static StarBackend spectral() { return {}; }
  static StarBackend series(int K) { return {BackendKind::SeriesOrder, K, 1, false}; }
  static StarBackend kernel(int r, bool literal = false) {
    return {BackendKind::KernelQuadrature, 4, r, literal};
  }
  std::string name() const;
};

StarBackend parse_backend(const std::string& name, int order, int refine);

namespace moyal {

inline constexpr int kMaxOrder = 16;
inline constexpr int kQuadratureMaxPoints = 32;
inline constexpr int kQuadratureMaxFinePoints = 128 * 128;

Field star(const Field& f, const Field& g, const ThetaStructure& th,
           const StarBackend& b = StarBackend::spectral());
Field star_commutator(const Field& f, const Field& g, const ThetaStructure& th,
                      const StarBackend& b = StarBackend::spectral());
Field star_anticommutator(const Field& f, const Field& g, const ThetaStructure& th,
                          const StarBackend& b = StarBackend::spectral());

Field spectral_twisted(const Field& f, const Field& g, const ThetaStructure& th);
Field series_order(const Field& f, const Field& g, const ThetaStructure& th, int K);
Field kernel_quadrature(const Field& f, const Field& g, const ThetaStructure& th, int r,
                        bool literal_kernel);

// Affine frame for x-tilde: scale * 2 Theta^{-1} x + offset.
struct TildeFrame {
  double scale = 1.0;
  std::vector<double> offset;
  double shift(int mu) const { return offset.empty() ? 0.0 : offset[mu]; }
};

Field tilde_coordinate(const Lattice& lat, const ThetaStructure& th, int mu,
                       const TildeFrame& fr = {});
// xt_mu * f and f * xt_mu in closed form
Field tilde_left(const Field& f, const ThetaStructure& th, int mu, const TildeFrame& fr = {});
Field tilde_right(const Field& f, const ThetaStructure& th, int mu, const TildeFrame& fr = {});
// x^mu * g and g * x^mu in closed form
Field coord_left(const Field& g, const ThetaStructure& th, int mu);
Field coord_right(const Field& g, const ThetaStructure& th, int mu);

struct StarExponential {
  Field value;
  double truncation_bound = 0.0;
};

StarExponential star_exponential(const Field& alpha, int K, const ThetaStructure& th,
                                 const StarBackend& b = StarBackend::spectral(), double sign = 1.0);

// A word is a star product of letters; tilde and coordinate letters are applied in
// closed form next to a decaying field letter.
struct Letter {
  enum Kind { Value, Tilde, Coord } kind = Value;
  const Field* field = nullptr;
  int axis = 0;
};

inline Letter F(const Field& f) { return {Letter::Value, &f, 0}; }
inline Letter Xt(int nu) { return {Letter::Tilde, nullptr, nu}; }
inline Letter Xc(int nu) { return {Letter::Coord, nullptr, nu}; }

struct WordContext {
  ThetaStructure theta;
  StarBackend backend;
  TildeFrame frame;
};

Field word(const std::vector<Letter>& letters, const WordContext& ctx);
Field word_commutator(const std::vector<Letter>& a, const std::vector<Letter>& b,
                      const WordContext& ctx);

}  // namespace moyal
}  // namespace mgw
