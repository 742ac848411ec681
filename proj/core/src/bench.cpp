#include "mgw/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <json.hpp>

#include "mgw/moyal.hpp"

namespace mgw {

const std::vector<BenchShape>& bench_shapes() {
  static const std::vector<BenchShape> s{{2, 16}, {2, 32}, {2, 64}, {2, 128}, {4, 16}};
  return s;
}

double fit_exponent(const std::vector<double>& x, const std::vector<double>& t) {
  const std::size_t n = x.size();
  if (n < 2 || t.size() != n) throw PreconditionError("fit needs two or more points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double a = std::log(x[i]), b = std::log(t[i]);
    sx += a;
    sy += b;
    sxx += a * a;
    sxy += a * b;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

namespace {

struct Timing {
  double median, p95;
  Field value;
};

Timing time_star(const Field& f, const Field& g, const ThetaStructure& th, const StarBackend& b,
                 int repeats) {
  std::vector<double> t;
  Field out;
  for (int i = 0; i < repeats; ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    out = moyal::star(f, g, th, b);
    t.push_back(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  }
  std::sort(t.begin(), t.end());
  const auto at = [&](double q) {
    return t[std::min(t.size() - 1, static_cast<std::size_t>(std::ceil(q * t.size())) - 1)];
  };
  return {at(0.5), at(0.95), std::move(out)};
}

}  // namespace

BenchResult bench_backends(const RunConfig& cfg) {
  BenchResult res;
  const double L = cfg.make_lattice().length(0);
  const double theta = cfg.theta.empty() ? 1.0 : cfg.theta[0];
  const StarBackend kinds[] = {StarBackend::spectral(), StarBackend::series(cfg.backend.K),
                               StarBackend::kernel(cfg.backend.r)};
  std::vector<double> nd_log, mixed, t_spec;
  for (const auto& s : bench_shapes()) {
    const Lattice lat = Lattice::cube(s.D, s.N, L);
    const ThetaStructure th = ThetaStructure::uniform(s.D, theta);
    // narrow enough to decay on the coarse 16-point lattices
    const Field f = lattice::gaussian(lat, std::vector<double>(s.D, 0.15), 0.9, 1.0);
    const Field g = lattice::gaussian(lat, std::vector<double>(s.D, -0.1), 0.9, cplx(0.5, 0.5));
    Field ref;
    for (const auto& b : kinds) {
      BenchRow row{b.name(), s.D, s.N};
      try {
        const Timing t = time_star(f, g, th, b, cfg.bench.repeats);
        row.median_s = t.median;
        row.p95_s = t.p95;
        row.points_per_s = static_cast<double>(lat.size()) / t.median;
        if (b.kind == BackendKind::SpectralTwisted) ref = t.value;
        row.rel_err = l2_norm(t.value - ref) / l2_norm(ref);
      } catch (const ResourceGuardError&) {
        row.skipped = true;
      }
      res.rows.push_back(row);
      if (b.kind == BackendKind::SpectralTwisted && s.D == 2) {
        const double n = s.N, lg = std::log2(n);
        nd_log.push_back(n * n * lg);
        mixed.push_back(n * n * n * lg);
        t_spec.push_back(row.median_s);
      }
    }
  }
  res.nd_log = {fit_exponent(nd_log, t_spec), "N^D log N"};
  res.mixed = {fit_exponent(mixed, t_spec), "N^{3D/2} log N"};

  const Lattice lat = Lattice::cube(2, 64, L);
  const ThetaStructure th = ThetaStructure::uniform(2, theta);
  const Field f = lattice::gaussian(lat, {0.15, -0.1}, 1.0, 1.0);
  const Field g = lattice::gaussian(lat, {-0.1, 0.15}, 1.0, cplx(0.5, 0.5));
  const Field ref = moyal::spectral_twisted(f, g, th);
  double worst = 0.0;
  for (int K = 1; K <= cfg.bench.max_order; ++K) {
    res.series_errors.push_back(l2_norm(moyal::series_order(f, g, th, K) - ref) / l2_norm(ref));
    if (K > 1) worst = std::max(worst, res.series_errors[K - 1] / res.series_errors[K - 2]);
  }

  Report& rep = res.report;
  rep.config_digest = cfg.digest();
  rep.seed = cfg.check.seed;
  auto add = [&](std::string id, std::string ref_text, double measured, double tol) {
    Record r;
    r.suite = "bench";
    r.check_id = std::move(id);
    r.paper_ref = std::move(ref_text);
    r.measured = measured;
    r.tolerance = tol;
    r.pass = evaluate(std::abs(measured), tol, Bound::Upper);
    rep.records.push_back(std::move(r));
  };
  const double tol = 0.3 * cfg.check.tolerance_scale;
  add("scaling.nd-log", "twisted convolution scales as N^D log N (exponent - 1)", res.nd_log.exponent - 1.0, tol);
  add("scaling.mixed", "twisted convolution scales as N^{3D/2} log N (exponent - 1)",
      res.mixed.exponent - 1.0, tol);
  if (cfg.bench.max_order > 1)
    add("series.monotone", "derivative series error ratio between consecutive K", worst,
        1.0 * cfg.check.tolerance_scale);
  for (const auto& row : res.rows)
    if (row.skipped) {
      Record r;
      r.suite = "bench";
      r.check_id = "skipped." + row.backend + "." + std::to_string(row.D) + "x" + std::to_string(row.N);
      r.paper_ref = "resource guard";
      r.measured = NAN;
      r.skipped = true;
      r.note = "skipped";
      rep.records.push_back(std::move(r));
    }
  rep.sort();
  return res;
}

std::string BenchResult::json() const {
  auto j = nlohmann::json::parse(report.to_json());
  j["rows"] = nlohmann::json::array();
  for (const auto& r : rows) {
    nlohmann::json o{{"backend", r.backend}, {"D", r.D}, {"N", r.N}, {"skipped", r.skipped}};
    if (!r.skipped) {
      o["median_s"] = r.median_s;
      o["p95_s"] = r.p95_s;
      o["rel_err"] = r.rel_err;
      o["points_per_s"] = r.points_per_s;
    }
    j["rows"].push_back(std::move(o));
  }
  j["series_errors"] = series_errors;
  j["fits"] = {{nd_log.model, nd_log.exponent}, {mixed.model, mixed.exponent}};
  return j.dump(2) + "\n";
}

}  // namespace mgw
