#include "mgw/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <tuple>

namespace mgw::fft {
namespace {

using Key = std::tuple<std::vector<int>, std::vector<bool>, int>;

struct PlanCache {
  std::mutex mu;
  std::map<Key, fftw_plan> plans;
  ~PlanCache() {
    for (auto& [k, p] : plans) fftw_destroy_plan(p);
  }
};

PlanCache& cache() {
  static PlanCache c;
  return c;
}

fftw_plan plan_for(const std::vector<int>& dims, const std::vector<bool>& axes, int sign) {
  auto& c = cache();
  std::lock_guard<std::mutex> lock(c.mu);
  Key key{dims, axes, sign};
  auto it = c.plans.find(key);
  if (it != c.plans.end()) return it->second;

  const int D = static_cast<int>(dims.size());
  std::vector<std::ptrdiff_t> stride(D, 1);
  for (int mu = D - 2; mu >= 0; --mu) stride[mu] = stride[mu + 1] * dims[mu + 1];

  std::vector<fftw_iodim64> tdims, hdims;
  std::size_t total = 1;
  for (int mu = 0; mu < D; ++mu) {
    total *= dims[mu];
    fftw_iodim64 d{dims[mu], stride[mu], stride[mu]};
    (axes[mu] ? tdims : hdims).push_back(d);
  }
  // planning with ESTIMATE leaves the buffer untouched
  auto* buf = fftw_alloc_complex(total);
  fftw_plan p = fftw_plan_guru64_dft(static_cast<int>(tdims.size()), tdims.data(),
                                     static_cast<int>(hdims.size()), hdims.data(), buf, buf,
                                     sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD,
                                     FFTW_ESTIMATE | FFTW_UNALIGNED);
  fftw_free(buf);
  if (!p) throw std::runtime_error("fftw planning failed");
  c.plans.emplace(std::move(key), p);
  return p;
}

}  // namespace

void transform(cplx* data, const std::vector<int>& dims, const std::vector<bool>& axes, int sign) {
  bool any = false;
  for (bool a : axes) any = any || a;
  if (!any) return;
  fftw_plan p = plan_for(dims, axes, sign);
  auto* ptr = reinterpret_cast<fftw_complex*>(data);
  fftw_execute_dft(p, ptr, ptr);
}

void forward(Field& f) {
  const auto& lat = f.lattice();
  transform(f.data(), lat.shape(), std::vector<bool>(lat.dim(), true), -1);
}

void backward(Field& f) {
  const auto& lat = f.lattice();
  transform(f.data(), lat.shape(), std::vector<bool>(lat.dim(), true), +1);
  f *= 1.0 / static_cast<double>(lat.size());
}

void forward_axis(Field& f, int mu) {
  const auto& lat = f.lattice();
  std::vector<bool> ax(lat.dim(), false);
  ax[mu] = true;
  transform(f.data(), lat.shape(), ax, -1);
}

void backward_axis(Field& f, int mu) {
  const auto& lat = f.lattice();
  std::vector<bool> ax(lat.dim(), false);
  ax[mu] = true;
  transform(f.data(), lat.shape(), ax, +1);
  f *= 1.0 / lat.n(mu);
}

std::size_t cached_plans() {
  auto& c = cache();
  std::lock_guard<std::mutex> lock(c.mu);
  return c.plans.size();
}

}  // namespace mgw::fft
