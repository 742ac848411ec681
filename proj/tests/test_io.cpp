#include <gtest/gtest.h>

#include <chrono>
#include <cmath>
#include <cstring>
#include <filesystem>
#include <json.hpp>
#include <set>

#include "mgw/bench.hpp"
#include "mgw/field_file.hpp"
#include "mgw/suites.hpp"

using namespace mgw;
namespace fs = std::filesystem;

namespace {

std::string tmp(const std::string& name) {
  return (fs::temp_directory_path() / ("mgw_test_" + name)).string();
}

const char* kMinimal = R"(
[lattice]
D = 2
N = 64
L = 12
[check]
suites = commutative-limit
)";

}  // namespace

TEST(FieldFile, RoundTripIsBitExact) {
  auto lat = Lattice::make(3, {16, 8, 32}, {12.0, 11.5, 12.25});
  auto f = lattice::gaussian(lat, {0.1, -0.2, 0.3}, 0.8, cplx(0.7, -0.3), {0.4, 0.0, -1.0});
  ThetaStructure th(3, {0.75});
  const auto path = tmp("roundtrip.mgwf");
  save_field(path, f, th);
  EXPECT_EQ(fs::file_size(path), 4u + 2 + 2 + 3 * 4 + 3 * 8 + 8 + 16 * lat.size());
  auto back = load_field(path);
  ASSERT_EQ(back.field.lattice(), lat);
  EXPECT_EQ(back.theta.block_thetas(), th.block_thetas());
  EXPECT_EQ(std::memcmp(back.field.values().data(), f.values().data(), 16 * f.size()), 0);
  fs::remove(path);
}

TEST(FieldFile, ByteOrderFixture) {
  const std::string path = std::string(MGW_TEST_DATA) + "/byteorder_v1.mgwf";
  auto s = load_field(path);
  const Lattice& lat = s.field.lattice();
  ASSERT_EQ(lat.dim(), 2);
  EXPECT_EQ(lat.n(0), 8);
  EXPECT_EQ(lat.n(1), 8);
  EXPECT_EQ(lat.length(0), 1.5);
  EXPECT_EQ(lat.length(1), 2.0);
  EXPECT_EQ(s.theta.block_theta(0), 0.25);
  for (std::size_t i = 0; i < s.field.size(); ++i) {
    EXPECT_EQ(s.field[i].real(), i + 0.5);
    EXPECT_EQ(s.field[i].imag(), -0.25 * i);
  }
  // re-encoding reproduces the committed bytes
  EXPECT_EQ(encode_field(s.field, s.theta), read_text(path));
  const std::string bytes = encode_field(s.field, s.theta);
  const unsigned char head[] = {'M', 'G', 'W', 'F', 1, 0, 2, 0, 8, 0, 0, 0, 8, 0, 0, 0};
  EXPECT_EQ(std::memcmp(bytes.data(), head, sizeof head), 0);
  // 1.5 as little-endian binary64: 00 00 00 00 00 00 f8 3f
  EXPECT_EQ(static_cast<unsigned char>(bytes[16 + 6]), 0xf8);
  EXPECT_EQ(static_cast<unsigned char>(bytes[16 + 7]), 0x3f);
}

TEST(FieldFile, DistinctErrors) {
  auto lat = Lattice::cube(2, 8, 4.0);
  const std::string good = encode_field(Field(lat, cplx(1.0, 2.0)), ThetaStructure::uniform(2, 1.0));
  auto code = [](const std::string& b) {
    try {
      decode_field(b);
    } catch (const FieldFileError& e) {
      return e.code();
    }
    return FieldFileErrc{};
  };
  EXPECT_EQ(code(good.substr(0, good.size() - 1)), FieldFileErrc::TruncatedPayload);
  EXPECT_EQ(code(good.substr(0, 60)), FieldFileErrc::TruncatedPayload);
  std::string magic = good;
  magic[0] = 'X';
  EXPECT_EQ(code(magic), FieldFileErrc::BadMagic);
  EXPECT_EQ(code("MG"), FieldFileErrc::BadMagic);
  std::string version = good;
  version[4] = 2;
  EXPECT_EQ(code(version), FieldFileErrc::VersionMismatch);
  std::string shape = good;
  shape[8] = 7;  // N = 7 is not a power of two
  EXPECT_EQ(code(shape), FieldFileErrc::BadHeader);
  EXPECT_EQ(code(good + "x"), FieldFileErrc::BadHeader);
  EXPECT_THROW(load_field(tmp("does_not_exist.mgwf")), FieldFileError);
}

TEST(Config, DefaultsAndBroadcast) {
  auto c = parse_config_text("[lattice]\nD = 4\nN = 16\nL = 8, 8, 10, 10\n[theta]\ntheta = 0.5, 2\n");
  auto lat = c.make_lattice();
  EXPECT_EQ(lat.n(3), 16);
  EXPECT_EQ(lat.length(2), 10.0);
  EXPECT_EQ(c.make_theta().block_theta(1), 2.0);
  EXPECT_EQ(c.model.omega, 1.0);
  EXPECT_TRUE(c.wants("json"));
  EXPECT_FALSE(c.wants("csv"));
}

TEST(Config, ParsesEveryBlock) {
  auto c = parse_config_text(R"(
# comment
[model]
mass_sq = -0.5   # trailing comment
omega = 0.25
lambda = 3
[backend]
variant = series
K = 6
r = 2
[check]
suites = emt, gauge
tolerance_scale = 2
tolerance.gauge.ward = 1e-5
seed = 7
[output]
directory = out/dir
formats = csv, json
)");
  EXPECT_EQ(c.model.mass_sq, -0.5);
  EXPECT_EQ(c.star_backend().kind, BackendKind::SeriesOrder);
  EXPECT_EQ(c.star_backend().order, 6);
  EXPECT_EQ(c.check.suites, (std::vector<std::string>{"emt", "gauge"}));
  EXPECT_EQ(c.check.tolerances.at("gauge.ward"), 1e-5);
  EXPECT_EQ(c.check.seed, 7u);
  EXPECT_EQ(c.output.directory, "out/dir");
  EXPECT_TRUE(c.wants("csv"));
}

TEST(Config, Errors) {
  EXPECT_THROW(parse_config_text("[lattice]\nQ = 1\n"), ConfigError);
  EXPECT_THROW(parse_config_text("N = 64\n"), ConfigError);
  EXPECT_THROW(parse_config_text("[lattice]\nN = 64\nN = 32\n"), ConfigError);
  EXPECT_THROW(parse_config_text("[lattice]\nN = sixty\n"), ConfigError);
  EXPECT_THROW(parse_config_text("[lattice]\nN = 60\n"), ConfigError);
  EXPECT_THROW(parse_config_text("[lattice]\nN = 64, 64, 64\n"), ConfigError);
  EXPECT_THROW(parse_config_text("[lattice\nN = 64\n"), ConfigError);
  EXPECT_THROW(parse_config_text("[model]\nomega = -1\n"), ConfigError);
  EXPECT_THROW(parse_config_text("[backend]\nvariant = fancy\n"), ConfigError);
  EXPECT_THROW(parse_config_text("[backend]\nvariant = series\nK = 17\n"), ConfigError);
  EXPECT_THROW(parse_config_text("[check]\ntolerance_scale = -1\n"), ConfigError);
  EXPECT_THROW(parse_config_text("[check]\ntolerance.laws.tracial = -1e-3\n"), ConfigError);
  EXPECT_THROW(parse_config_text("[output]\nformats = xml\n"), ConfigError);
  EXPECT_NO_THROW(parse_config_text("[check]\ntolerance_scale = 0\n"));
  EXPECT_THROW(load_config(tmp("missing.cfg")), ConfigError);
}

TEST(Config, DigestTracksContent) {
  auto a = parse_config_text(kMinimal);
  auto b = parse_config_text(std::string(kMinimal) + "\n# only a comment\n");
  auto c = parse_config_text(std::string(kMinimal) + "[model]\nlambda = 2\n");
  EXPECT_EQ(a.digest(), b.digest());
  EXPECT_NE(a.digest(), c.digest());
  EXPECT_EQ(a.digest().size(), 16u);
}

TEST(Report, EvaluateAndZeroTolerance) {
  EXPECT_TRUE(evaluate(1e-9, 1e-8, Bound::Upper));
  EXPECT_FALSE(evaluate(1e-7, 1e-8, Bound::Upper));
  EXPECT_TRUE(evaluate(0.1, 1e-3, Bound::Lower));
  EXPECT_FALSE(evaluate(0.0, 0.0, Bound::Upper));
  EXPECT_FALSE(evaluate(0.1, 0.0, Bound::Lower));
  EXPECT_FALSE(evaluate(NAN, 1.0, Bound::Upper));
}

TEST(Report, JsonSchemaAndRoundTrip) {
  Report r;
  r.config_digest = "abc";
  r.seed = 11;
  r.records.push_back({"s2", "b", "identity b", 1.0, 2.0, true});
  r.records.push_back({"s1", "z", "identity z", NAN, 1.0, false});
  r.records.push_back({"s1", "a", "identity a", 3.0, 1.0, false});
  r.sort();
  EXPECT_EQ(r.records[0].check_id, "a");
  EXPECT_EQ(r.records[2].suite, "s2");
  const auto j = nlohmann::json::parse(r.to_json());
  EXPECT_EQ(j.at("config_digest"), "abc");
  EXPECT_EQ(j.at("seed"), 11);
  for (const auto& rec : j.at("records"))
    for (const char* k : {"suite", "check_id", "paper_ref", "measured", "tolerance", "pass"})
      EXPECT_TRUE(rec.contains(k)) << k;
  auto back = Report::from_json(r.to_json());
  ASSERT_EQ(back.records.size(), 3u);
  EXPECT_TRUE(std::isnan(back.records[1].measured));
  EXPECT_EQ(back.records[2].paper_ref, "identity b");
  EXPECT_FALSE(back.all_pass());
  EXPECT_EQ(exit_code(back), kExitCheckFailure);
  EXPECT_THROW(Report::from_json("{}"), std::runtime_error);
}

TEST(Report, BenchCsvColumns) {
  std::vector<BenchRow> rows{{"spectral", 2, 16, 1e-4, 2e-4, 0.0}, {"kernel4", 2, 64}};
  rows[1].skipped = true;
  const std::string csv = bench_csv(rows);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "backend,D,N,median_s,p95_s,rel_err");
  EXPECT_NE(csv.find("kernel4,2,64,skipped,skipped,skipped"), std::string::npos);
}

TEST(Bench, FitExponentOfPowerLaw) {
  std::vector<double> x{1, 2, 4, 8}, t;
  for (double v : x) t.push_back(3.0 * std::pow(v, 1.5));
  EXPECT_NEAR(fit_exponent(x, t), 1.5, 1e-12);
  EXPECT_THROW(fit_exponent({1.0}, {1.0}), PreconditionError);
}

TEST(Suites, CatalogIsConsistent) {
  std::set<std::string> ids;
  for (const auto& s : suite_catalog()) {
    EXPECT_FALSE(s.checks.empty()) << s.name;
    for (const auto& c : s.checks) {
      EXPECT_TRUE(ids.insert(c.id).second) << "duplicate " << c.id;
      EXPECT_FALSE(c.paper_ref.empty()) << c.id;
      EXPECT_GT(c.tolerance, 0.0) << c.id;
    }
  }
  for (int k = 1; k <= 12; ++k) {
    bool covered = false;
    for (const auto& s : suite_catalog())
      for (const auto& c : s.checks) covered |= c.criterion == k;
    EXPECT_TRUE(covered) << "criterion " << k;
  }
}

TEST(Suites, UnknownSuiteFailsBeforeComputing) {
  auto c = parse_config_text(kMinimal);
  c.check.suites = {"commutative-limit", "foo"};
  const auto t0 = std::chrono::steady_clock::now();
  EXPECT_THROW(run_suite(c), ConfigError);
  EXPECT_LT(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count(), 0.05);
  c.check.suites = {"commutative-limit"};
  c.check.tolerances["no.such.check"] = 1.0;
  EXPECT_THROW(run_suite(c), ConfigError);
}

TEST(Suites, RecordsAndDeterminism) {
  auto c = parse_config_text(kMinimal);
  auto a = run_suite(c), b = run_suite(c);
  EXPECT_EQ(a.to_json(), b.to_json());
  EXPECT_EQ(a.config_digest, c.digest());
  EXPECT_EQ(a.seed, c.check.seed);
  ASSERT_EQ(a.records.size(), 2u);
  for (const auto& r : a.records) {
    EXPECT_EQ(r.suite, "commutative-limit");
    EXPECT_FALSE(r.paper_ref.empty());
    EXPECT_TRUE(r.pass) << r.check_id;
  }
  EXPECT_EQ(exit_code(a), kExitPass);
}

TEST(Suites, ZeroToleranceFailsEverything) {
  auto c = parse_config_text(std::string(kMinimal) + "tolerance_scale = 0\n");
  auto r = run_suite(c);
  for (const auto& rec : r.records) EXPECT_FALSE(rec.pass) << rec.check_id;
  EXPECT_EQ(exit_code(r), kExitCheckFailure);
  auto o = parse_config_text(std::string(kMinimal) + "tolerance.limit.star = 0\n");
  auto ro = run_suite(o);
  for (const auto& rec : ro.records) EXPECT_EQ(rec.pass, rec.check_id != "limit.star");
}

TEST(Suites, ToleranceOverrideApplies) {
  auto c = parse_config_text(std::string(kMinimal) + "tolerance.limit.emt = 1e-9\n");
  auto r = run_suite(c);
  for (const auto& rec : r.records)
    if (rec.check_id == "limit.emt") {
      EXPECT_EQ(rec.tolerance, 1e-9);
      EXPECT_FALSE(rec.pass);
    }
}

TEST(Suites, KernelBackendGuard) {
  auto c = parse_config_text(std::string(kMinimal) + "[backend]\nvariant = kernel\n");
  c.check.suites = {"moyal-identities"};
  EXPECT_THROW(run_suite(c), ResourceGuardError);
}
