#include <CLI11.hpp>

#include <filesystem>
#include <iomanip>
#include <iostream>
#include <random>

#include "mgw/bench.hpp"
#include "mgw/field_file.hpp"
#include "mgw/fixtures.hpp"
#include "mgw/suites.hpp"

namespace fs = std::filesystem;
using namespace mgw;

namespace {

std::string out_path(const RunConfig& cfg, const std::string& name) {
  fs::create_directories(cfg.output.directory);
  return (fs::path(cfg.output.directory) / name).string();
}

FieldPair input_pair(const RunConfig& cfg) {
  if (!cfg.input.phi.empty()) {
    const Field phi = load_field(cfg.input.phi).field;
    const Field phibar = cfg.input.phibar.empty() ? conj(phi) : load_field(cfg.input.phibar).field;
    return {phi, phibar};
  }
  std::mt19937_64 rng(cfg.check.seed);
  const Lattice lat = cfg.make_lattice();
  return {fixtures::random_field(lat, rng), fixtures::random_field(lat, rng)};
}

void print(const Report& r) {
  for (const auto& rec : r.records)
    std::cout << std::left << std::setw(18) << rec.suite << std::setw(30) << rec.check_id
              << std::right << std::setw(13) << std::setprecision(4) << rec.measured
              << std::setw(11) << rec.tolerance << "  "
              << (rec.skipped ? "skipped" : rec.pass ? "pass" : "FAIL") << '\n';
}

int emit(const RunConfig& cfg, const Report& r, const std::string& stem) {
  if (cfg.wants("json")) write_text(out_path(cfg, stem + ".json"), r.to_json());
  if (cfg.wants("csv")) write_text(out_path(cfg, stem + ".csv"), r.to_csv());
  print(r);
  return exit_code(r);
}

int cmd_gen(const RunConfig& cfg) {
  const FieldPair fp = input_pair(cfg);
  const ThetaStructure th = cfg.make_theta();
  save_field(out_path(cfg, "phi.mgwf"), fp.phi, th);
  save_field(out_path(cfg, "phibar.mgwf"), fp.phibar, th);
  std::cout << "wrote " << out_path(cfg, "phi.mgwf") << " and phibar.mgwf\n";
  return kExitPass;
}

int cmd_star(const RunConfig& cfg) {
  const FieldPair fp = input_pair(cfg);
  const ThetaStructure th = cfg.make_theta();
  const StarBackend b = cfg.star_backend();
  const Field s = moyal::star(fp.phi, fp.phibar, th, b);
  save_field(out_path(cfg, "star.mgwf"), s, th);
  const Field ref = moyal::spectral_twisted(fp.phi, fp.phibar, th);
  std::cout << "backend " << b.name() << "  |f*g| = " << l2_norm(s)
            << "  rel. deviation from spectral = " << l2_norm(s - ref) / l2_norm(ref) << '\n';
  return kExitPass;
}

int cmd_bench(const RunConfig& cfg) {
  const BenchResult r = bench_backends(cfg);
  if (cfg.wants("csv")) write_text(out_path(cfg, "bench.csv"), r.csv());
  if (cfg.wants("json")) write_text(out_path(cfg, "bench.json"), r.json());
  std::cout << r.csv();
  std::cout << "fitted exponent vs " << r.nd_log.model << ": " << r.nd_log.exponent << '\n'
            << "fitted exponent vs " << r.mixed.model << ": " << r.mixed.exponent << '\n';
  print(r.report);
  return exit_code(r.report);
}

int cmd_report(const RunConfig& cfg) {
  const std::string path = (fs::path(cfg.output.directory) / "report.json").string();
  if (!fs::exists(path)) throw ConfigError("no report at " + path + "; run 'check' first");
  const Report r = Report::from_json(read_text(path));
  std::cout << "config " << r.config_digest << "  seed " << r.seed << '\n';
  print(r);
  std::size_t failed = 0;
  for (const auto& rec : r.records) failed += !(rec.pass || rec.skipped);
  std::cout << r.records.size() - failed << " of " << r.records.size() << " checks pass\n";
  if (r.config_digest != cfg.digest()) std::cout << "note: report was made with a different config\n";
  return exit_code(r);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Moyal algebra engine and verification lab for the noncommutative complex scalar model with harmonic term"};
  app.require_subcommand(1);
  std::string config;
  const std::pair<const char*, const char*> subs[] = {
      {"gen", "generate seeded fixture fields as field files"},
      {"star", "star product of the input (or generated) fields"},
      {"check", "run the selected check suites"},
      {"emt", "energy-momentum tensor suite"},
      {"dilatation", "dilatation Ward identity suite"},
      {"gauge", "gauge sector suite"},
      {"bench", "time and compare star backends"},
      {"report", "summarize the last check report"},
  };
  for (const auto& [name, help] : subs)
    app.add_subcommand(name, help)->add_option("config", config, "run configuration")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitPass : kExitConfigError;
  }
  const std::string sub = app.get_subcommands().front()->get_name();
  try {
    const RunConfig cfg = load_config(config);
    if (sub == "gen") return cmd_gen(cfg);
    if (sub == "star") return cmd_star(cfg);
    if (sub == "check") return emit(cfg, run_suite(cfg), "report");
    if (sub == "emt" || sub == "dilatation" || sub == "gauge")
      return emit(cfg, run_suites(cfg, {sub}), sub);
    if (sub == "bench") return cmd_bench(cfg);
    return cmd_report(cfg);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const FieldFileError& e) {
    std::cerr << "field file error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const PreconditionError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const ResourceGuardError& e) {
    std::cerr << "resource guard: " << e.what() << '\n';
    return kExitResourceGuard;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitCheckFailure;
  }
}
