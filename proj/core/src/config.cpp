#include "mgw/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <iomanip>
#include <set>
#include <sstream>

namespace mgw {
namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return {};
  return s.substr(a, s.find_last_not_of(" \t\r") - a + 1);
}

std::vector<std::string> split_list(const std::string& v) {
  std::vector<std::string> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

template <class T>
T number(const std::string& v, const std::string& where) {
  T x{};
  const char* end = v.data() + v.size();
  auto [p, ec] = std::from_chars(v.data(), end, x);
  if (ec != std::errc() || p != end) throw ConfigError(where + ": not a number: '" + v + "'");
  return x;
}

template <class T>
std::vector<T> numbers(const std::string& v, const std::string& where) {
  std::vector<T> out;
  for (const auto& s : split_list(v)) out.push_back(number<T>(s, where));
  if (out.empty()) throw ConfigError(where + ": empty list");
  return out;
}

template <class T>
std::string join(const std::vector<T>& v) {
  std::ostringstream o;
  o << std::setprecision(17);
  for (std::size_t i = 0; i < v.size(); ++i) o << (i ? "," : "") << v[i];
  return o.str();
}

template <class T>
std::vector<T> broadcast(const std::vector<T>& v, int n, const char* what) {
  if (static_cast<int>(v.size()) == n) return v;
  if (v.size() == 1) return std::vector<T>(n, v[0]);
  throw ConfigError(std::string(what) + ": expected 1 or " + std::to_string(n) + " values");
}

using Setter = std::function<void(RunConfig&, const std::string&, const std::string&)>;

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> s = {
      {"lattice.D", [](RunConfig& c, auto& v, auto& w) { c.lattice.D = number<int>(v, w); }},
      {"lattice.N", [](RunConfig& c, auto& v, auto& w) { c.lattice.N = numbers<int>(v, w); }},
      {"lattice.L", [](RunConfig& c, auto& v, auto& w) { c.lattice.L = numbers<double>(v, w); }},
      {"theta.theta", [](RunConfig& c, auto& v, auto& w) { c.theta = numbers<double>(v, w); }},
      {"model.mass_sq", [](RunConfig& c, auto& v, auto& w) { c.model.mass_sq = number<double>(v, w); }},
      {"model.omega", [](RunConfig& c, auto& v, auto& w) { c.model.omega = number<double>(v, w); }},
      {"model.lambda", [](RunConfig& c, auto& v, auto& w) { c.model.lambda = number<double>(v, w); }},
      {"backend.variant", [](RunConfig& c, auto& v, auto&) { c.backend.variant = v; }},
      {"backend.K", [](RunConfig& c, auto& v, auto& w) { c.backend.K = number<int>(v, w); }},
      {"backend.r", [](RunConfig& c, auto& v, auto& w) { c.backend.r = number<int>(v, w); }},
      {"check.suites", [](RunConfig& c, auto& v, auto&) { c.check.suites = split_list(v); }},
      {"check.tolerance_scale",
       [](RunConfig& c, auto& v, auto& w) { c.check.tolerance_scale = number<double>(v, w); }},
      {"check.seed", [](RunConfig& c, auto& v, auto& w) { c.check.seed = number<std::uint64_t>(v, w); }},
      {"output.directory", [](RunConfig& c, auto& v, auto&) { c.output.directory = v; }},
      {"output.formats", [](RunConfig& c, auto& v, auto&) { c.output.formats = split_list(v); }},
      {"bench.repeats", [](RunConfig& c, auto& v, auto& w) { c.bench.repeats = number<int>(v, w); }},
      {"bench.max_order", [](RunConfig& c, auto& v, auto& w) { c.bench.max_order = number<int>(v, w); }},
      {"input.phi", [](RunConfig& c, auto& v, auto&) { c.input.phi = v; }},
      {"input.phibar", [](RunConfig& c, auto& v, auto&) { c.input.phibar = v; }},
  };
  return s;
}

}  // namespace

RunConfig parse_config(std::istream& in, const std::string& source) {
  RunConfig c;
  std::string line, section;
  std::set<std::string> seen;
  for (int no = 1; std::getline(in, line); ++no) {
    const std::string where = source + ":" + std::to_string(no);
    if (const auto h = line.find('#'); h != std::string::npos) line.erase(h);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError(where + ": unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError(where + ": expected key = value");
    if (section.empty()) throw ConfigError(where + ": key outside of a section");
    const std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
    const std::string full = section + "." + key;
    if (!seen.insert(full).second) throw ConfigError(where + ": duplicate key " + full);
    if (section == "check" && key.rfind("tolerance.", 0) == 0) {
      c.check.tolerances[key.substr(10)] = number<double>(value, where);
      continue;
    }
    const auto it = setters().find(full);
    if (it == setters().end()) throw ConfigError(where + ": unknown key " + full);
    it->second(c, value, where);
  }
  c.validate();
  return c;
}

RunConfig parse_config_text(const std::string& text) {
  std::istringstream in(text);
  return parse_config(in);
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config " + path);
  return parse_config(in, path);
}

void RunConfig::validate() const {
  try {
    make_lattice();
    make_theta();
    star_backend();
  } catch (const PreconditionError& e) {
    throw ConfigError(e.what());
  }
  if (!std::isfinite(model.mass_sq) || !(model.omega >= 0.0) || !(model.lambda >= 0.0))
    throw ConfigError("model: need finite mass_sq and non-negative omega, lambda");
  // zero is accepted and makes every check fail
  if (!(check.tolerance_scale >= 0.0) || !std::isfinite(check.tolerance_scale))
    throw ConfigError("check.tolerance_scale must be a finite number >= 0");
  for (const auto& [id, t] : check.tolerances)
    if (!(t >= 0.0) || !std::isfinite(t)) throw ConfigError("tolerance." + id + " must be >= 0");
  for (const auto& f : output.formats)
    if (f != "csv" && f != "json") throw ConfigError("output.formats: unknown format " + f);
  if (output.directory.empty()) throw ConfigError("output.directory is empty");
  if (bench.repeats < 1) throw ConfigError("bench.repeats must be positive");
  if (bench.max_order < 1 || bench.max_order > moyal::kMaxOrder)
    throw ConfigError("bench.max_order must be in [1, 16]");
}

Lattice RunConfig::make_lattice() const {
  if (lattice.D < 1 || lattice.D > 8) throw ConfigError("lattice.D must be in [1, 8]");
  return Lattice::make(lattice.D, broadcast(lattice.N, lattice.D, "lattice.N"),
                       broadcast(lattice.L, lattice.D, "lattice.L"));
}

ThetaStructure RunConfig::make_theta() const {
  const int blocks = lattice.D / 2;
  if (blocks == 0) return ThetaStructure(lattice.D, {});
  return ThetaStructure(lattice.D, broadcast(theta, blocks, "theta.theta"));
}

ModelParams RunConfig::model_params() const {
  ModelParams p;
  p.mass_sq = model.mass_sq;
  p.omega = model.omega;
  p.lambda = model.lambda;
  p.theta = make_theta();
  return p;
}

StarBackend RunConfig::star_backend() const {
  return parse_backend(backend.variant, backend.K, backend.r);
}

bool RunConfig::wants(const std::string& format) const {
  return std::find(output.formats.begin(), output.formats.end(), format) != output.formats.end();
}

std::string RunConfig::canonical() const {
  std::ostringstream o;
  o << std::setprecision(17);
  o << "lattice.D=" << lattice.D << "\nlattice.N=" << join(lattice.N) << "\nlattice.L=" << join(lattice.L)
    << "\ntheta.theta=" << join(theta) << "\nmodel.mass_sq=" << model.mass_sq
    << "\nmodel.omega=" << model.omega << "\nmodel.lambda=" << model.lambda
    << "\nbackend.variant=" << backend.variant << "\nbackend.K=" << backend.K
    << "\nbackend.r=" << backend.r << "\ncheck.suites=" << join(check.suites)
    << "\ncheck.tolerance_scale=" << check.tolerance_scale << "\ncheck.seed=" << check.seed;
  for (const auto& [id, t] : check.tolerances) o << "\ncheck.tolerance." << id << "=" << t;
  o << "\nbench.repeats=" << bench.repeats << "\nbench.max_order=" << bench.max_order
    << "\ninput.phi=" << input.phi << "\ninput.phibar=" << input.phibar << "\n";
  return o.str();
}

std::string RunConfig::digest() const {
  // FNV-1a, 64 bit
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char ch : canonical()) {
    h ^= ch;
    h *= 0x100000001b3ull;
  }
  std::ostringstream o;
  o << std::hex << std::setw(16) << std::setfill('0') << h;
  return o.str();
}

}  // namespace mgw
