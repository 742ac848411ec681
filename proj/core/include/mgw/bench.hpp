#pragma once

#include <string>
#include <vector>

#include "mgw/config.hpp"
#include "mgw/report.hpp"

namespace mgw {

struct BenchShape {
  int D, N;
};

const std::vector<BenchShape>& bench_shapes();  // 16^2, 32^2, 64^2, 128^2, 16^4

struct ScalingFit {
  double exponent = 0.0;  // slope of log t against log model(N)
  std::string model;
};

struct BenchResult {
  std::vector<BenchRow> rows;
  std::vector<double> series_errors;  // K = 1 .. max_order on 64^2
  ScalingFit nd_log, mixed;           // N^D log N and N^{3D/2} log N models
  Report report;

  std::string csv() const { return bench_csv(rows); }
  std::string json() const;
};

// least-squares slope of log t on log x
double fit_exponent(const std::vector<double>& x, const std::vector<double>& t);

BenchResult bench_backends(const RunConfig& cfg);

}  // namespace mgw
