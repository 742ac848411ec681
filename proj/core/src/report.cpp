#include "mgw/report.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iterator>
#include <json.hpp>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace mgw {

bool evaluate(double measured, double tolerance, Bound bound) {
  if (!(tolerance > 0.0) || !std::isfinite(measured)) return false;
  return bound == Bound::Upper ? measured <= tolerance : measured > tolerance;
}

void Report::sort() {
  std::stable_sort(records.begin(), records.end(), [](const Record& a, const Record& b) {
    return std::tie(a.suite, a.check_id) < std::tie(b.suite, b.check_id);
  });
}

bool Report::all_pass() const {
  return std::all_of(records.begin(), records.end(), [](const Record& r) { return r.pass || r.skipped; });
}

namespace {

nlohmann::json number(double v) {
  if (std::isfinite(v)) return v;
  return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
}

double number(const nlohmann::json& j) {
  if (j.is_number()) return j.get<double>();
  const auto s = j.get<std::string>();
  if (s == "inf") return INFINITY;
  if (s == "-inf") return -INFINITY;
  return NAN;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

}  // namespace

std::string Report::to_json() const {
  nlohmann::json j;
  j["config_digest"] = config_digest;
  j["seed"] = seed;
  j["records"] = nlohmann::json::array();
  for (const auto& r : records) {
    nlohmann::json o{{"suite", r.suite}, {"check_id", r.check_id}, {"paper_ref", r.paper_ref},
                     {"measured", number(r.measured)}, {"tolerance", r.tolerance},
                     {"pass", r.pass}};
    if (r.skipped) o["skipped"] = true;
    if (r.bound == Bound::Lower) o["bound"] = "lower";
    if (!r.note.empty()) o["note"] = r.note;
    j["records"].push_back(std::move(o));
  }
  return j.dump(2) + "\n";
}

Report Report::from_json(const std::string& text) {
  Report rep;
  try {
    const auto j = nlohmann::json::parse(text);
    rep.config_digest = j.at("config_digest").get<std::string>();
    rep.seed = j.at("seed").get<std::uint64_t>();
    for (const auto& o : j.at("records")) {
      Record r;
      r.suite = o.at("suite").get<std::string>();
      r.check_id = o.at("check_id").get<std::string>();
      r.paper_ref = o.at("paper_ref").get<std::string>();
      r.measured = number(o.at("measured"));
      r.tolerance = o.at("tolerance").get<double>();
      r.pass = o.at("pass").get<bool>();
      r.skipped = o.value("skipped", false);
      r.bound = o.value("bound", "upper") == "lower" ? Bound::Lower : Bound::Upper;
      r.note = o.value("note", "");
      rep.records.push_back(std::move(r));
    }
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(std::string("malformed report: ") + e.what());
  }
  return rep;
}

std::string Report::to_csv() const {
  std::ostringstream o;
  o << std::setprecision(6);
  o << "suite,check_id,paper_ref,measured,tolerance,pass\n";
  for (const auto& r : records)
    o << csv_field(r.suite) << ',' << csv_field(r.check_id) << ',' << csv_field(r.paper_ref) << ','
      << r.measured << ',' << r.tolerance << ',' << (r.skipped ? "skipped" : r.pass ? "true" : "false")
      << '\n';
  return o.str();
}

std::string bench_csv(const std::vector<BenchRow>& rows) {
  std::ostringstream o;
  o << std::setprecision(6);
  o << "backend,D,N,median_s,p95_s,rel_err\n";
  for (const auto& r : rows) {
    o << r.backend << ',' << r.D << ',' << r.N << ',';
    if (r.skipped)
      o << "skipped,skipped,skipped\n";
    else
      o << r.median_s << ',' << r.p95_s << ',' << r.rel_err << '\n';
  }
  return o.str();
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

std::string read_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace mgw
