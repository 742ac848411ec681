#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace mgw {

using cplx = std::complex<double>;

// Raised when an operation is called outside its domain.
struct PreconditionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Raised when a request would exceed a cost or memory guard.
struct ResourceGuardError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class Lattice {
 public:
  Lattice() = default;

  static Lattice make(int D, std::vector<int> N, std::vector<double> L);
  static Lattice cube(int D, int N, double L) {
    return make(D, std::vector<int>(D, N), std::vector<double>(D, L));
  }

  int dim() const { return static_cast<int>(n_.size()); }
  int n(int mu) const { return n_[mu]; }
  double length(int mu) const { return l_[mu]; }
  double spacing(int mu) const { return l_[mu] / n_[mu]; }
  const std::vector<int>& shape() const { return n_; }
  const std::vector<double>& lengths() const { return l_; }
  std::size_t size() const { return size_; }
  std::size_t stride(int mu) const { return stride_[mu]; }
  double cell_volume() const;

  double coord(int mu, int j) const { return -0.5 * l_[mu] + j * spacing(mu); }
  // 2 pi / L times fftfreq ordering, Nyquist carried as -N/2.
  std::vector<double> wavenumbers(int mu) const;
  int mode_index(int mu, int j) const { return j < n_[mu] / 2 ? j : j - n_[mu]; }

  // multi-index of a flat offset, x0 slowest
  void unravel(std::size_t flat, int* idx) const;

  bool operator==(const Lattice& o) const { return n_ == o.n_ && l_ == o.l_; }
  bool operator!=(const Lattice& o) const { return !(*this == o); }

  static std::size_t max_points;

 private:
  std::vector<int> n_;
  std::vector<double> l_;
  std::vector<std::size_t> stride_;
  std::size_t size_ = 0;
};

class Field {
 public:
  Field() = default;
  explicit Field(const Lattice& lat, cplx fill = 0.0) : lat_(lat), v_(lat.size(), fill) {}
  Field(const Lattice& lat, std::vector<cplx> v);

  const Lattice& lattice() const { return lat_; }
  std::size_t size() const { return v_.size(); }
  cplx& operator[](std::size_t i) { return v_[i]; }
  const cplx& operator[](std::size_t i) const { return v_[i]; }
  cplx* data() { return v_.data(); }
  const cplx* data() const { return v_.data(); }
  std::vector<cplx>& values() { return v_; }
  const std::vector<cplx>& values() const { return v_; }

  Field& operator+=(const Field& o);
  Field& operator-=(const Field& o);
  Field& operator*=(cplx s);

  bool all_finite() const;

 private:
  Lattice lat_;
  std::vector<cplx> v_;
};

Field operator+(Field a, const Field& b);
Field operator-(Field a, const Field& b);
Field operator-(Field a);
Field operator*(cplx s, Field a);
Field operator*(Field a, cplx s);
Field operator*(double s, Field a);

void require_same_lattice(const Field& a, const Field& b);

// Samplewise product with no dealiasing.
Field pointwise(const Field& a, const Field& b);
Field conj(const Field& f);
Field real_part(const Field& f);

double l2_norm(const Field& f);     // sqrt(h^D sum |f|^2)
double max_abs(const Field& f);
double masked_max_abs(const Field& f, const Field& mask);
double masked_l2_norm(const Field& f, const Field& mask);

namespace lattice {

cplx integrate(const Field& f);
// h^D / prod N times the spectral power sum
double spectral_power(const Field& f);

Field spectral_derivative(const Field& f, int mu);
Field derivative(const Field& f, const std::vector<int>& orders);
Field laplacian(const Field& f);
// zero mode of the inverse is set to 0
Field inverse_laplacian(const Field& f);
// (-lap + shift)^{-1}, shift > 0
Field screened_inverse(const Field& f, double shift);

// 2/3 rule truncation of every axis
Field dealias(const Field& f);
Field dealiased_product(const Field& a, const Field& b);
// spectral interpolation onto an r-times finer grid of the same box
Field refine(const Field& f, int r);
// every r-th sample of a refined field
Field coarsen(const Field& f, const Lattice& coarse, int r);

Field coordinate_field(const Lattice& lat, int mu);
Field interior_mask(const Lattice& lat, double margin_fraction);
Field plane_wave(const Lattice& lat, const std::vector<int>& mode);

Field gaussian(const Lattice& lat, const std::vector<double>& center, double sigma, cplx amplitude,
               const std::vector<double>& momentum = {});
double boundary_decay(const Field& f);

inline constexpr double kDecayLimit = 1e-6;

}  // namespace lattice
}  // namespace mgw
