#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace mgw {

enum class Bound { Upper, Lower };  // pass iff measured <= tol, or measured > tol

struct Record {
  std::string suite, check_id, paper_ref;
  double measured = 0.0, tolerance = 0.0;
  bool pass = false;
  bool skipped = false;
  Bound bound = Bound::Upper;
  std::string note;
};

// a zero tolerance never passes
bool evaluate(double measured, double tolerance, Bound bound);

struct Report {
  std::string config_digest;
  std::uint64_t seed = 0;
  std::vector<Record> records;

  void sort();  // by (suite, check_id)
  bool all_pass() const;  // skipped records count as passing
  std::string to_json() const;
  std::string to_csv() const;
  static Report from_json(const std::string& text);
};

struct BenchRow {
  std::string backend;
  int D = 0, N = 0;
  double median_s = 0.0, p95_s = 0.0, rel_err = 0.0, points_per_s = 0.0;
  bool skipped = false;
};

// backend,D,N,median_s,p95_s,rel_err
std::string bench_csv(const std::vector<BenchRow>& rows);

void write_text(const std::string& path, const std::string& text);
std::string read_text(const std::string& path);

}  // namespace mgw
