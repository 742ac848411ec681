#pragma once

#include <cstdint>
#include <istream>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "mgw/gw_model.hpp"

namespace mgw {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Sectioned key = value text. Lists are comma separated; '#' starts a comment.
struct RunConfig {
  struct LatticeBlock {
    int D = 2;
    std::vector<int> N{64};     // one value is broadcast to every axis
    std::vector<double> L{12.0};
  } lattice;
  std::vector<double> theta{1.0};  // per block, broadcast likewise
  struct ModelBlock {
    double mass_sq = 0.0, omega = 1.0, lambda = 1.0;
  } model;
  struct BackendBlock {
    std::string variant = "spectral";
    int K = 4;
    int r = 4;
  } backend;
  struct CheckBlock {
    std::vector<std::string> suites;
    double tolerance_scale = 1.0;  // multiplies every default tolerance
    std::map<std::string, double> tolerances;  // absolute overrides by check id
    std::uint64_t seed = 20240611;
  } check;
  struct OutputBlock {
    std::string directory = "mgw-out";
    std::vector<std::string> formats{"json"};
  } output;
  struct BenchBlock {
    int repeats = 5;
    int max_order = 8;
  } bench;
  struct InputBlock {
    std::string phi, phibar;
  } input;

  void validate() const;
  Lattice make_lattice() const;
  ThetaStructure make_theta() const;
  ModelParams model_params() const;
  StarBackend star_backend() const;
  bool wants(const std::string& format) const;

  // normalized key = value listing; the digest hashes it
  std::string canonical() const;
  std::string digest() const;
};

RunConfig parse_config(std::istream& in, const std::string& source = "<config>");
RunConfig parse_config_text(const std::string& text);
RunConfig load_config(const std::string& path);

}  // namespace mgw
