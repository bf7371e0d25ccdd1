#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "l2ext/cli/config.hpp"
#include "l2ext/cli/driver.hpp"
#include "l2ext/cli/report.hpp"
#include "l2ext/cli/suites.hpp"
#include "l2ext/error.hpp"

using namespace l2ext;
using namespace l2ext::cli;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("l2ext-test-" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ErrorKind kind_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::Io;  // sentinel: nothing thrown
}

}  // namespace

TEST(Csv, QuotesOnlyWhenNeeded) {
  EXPECT_EQ(csv_field("plain"), "plain");
  EXPECT_EQ(csv_field("a,b"), "\"a,b\"");
  EXPECT_EQ(csv_field("say \"hi\""), "\"say \"\"hi\"\"\"");
  EXPECT_EQ(csv_field("two\nlines"), "\"two\nlines\"");
  const Table t{"t", {"x", "y"}, {{"1", "a,b"}}};
  EXPECT_EQ(to_csv(t), "x,y\r\n1,\"a,b\"\r\n");
}

TEST(Json, NonFiniteBecomesNull) {
  VerificationReport rep;
  SuiteReport s;
  s.suite = "weights";
  CheckRecord r;
  r.id = "nan-check";
  r.anchor = "plumbing";
  r.measured = std::numeric_limits<double>::quiet_NaN();
  r.expected = 0.1;
  r.failure = "non-finite";
  s.records.push_back(r);
  rep.suites.push_back(s);
  const std::string json = to_json(rep);
  EXPECT_NE(json.find("\"measured\": null"), std::string::npos) << json;
  EXPECT_NE(json.find("0.10000000000000001"), std::string::npos);
  EXPECT_EQ(json.find("NaN"), std::string::npos);
  EXPECT_FALSE(rep.passed());
}

TEST(Format, SeventeenDigits) {
  EXPECT_EQ(format_number(0.1), "0.10000000000000001");
  EXPECT_EQ(format_number(2.0), "2");
}

TEST(Config, UnknownKeysAndEmptySuite) {
  RunConfig cfg;
  EXPECT_EQ(kind_of([&] { cfg.set("tolerance.bogus", 1.0); }), ErrorKind::Config);
  EXPECT_EQ(kind_of([&] { cfg.set("tolerance.dhp", -1.0); }), ErrorKind::Config);
  cfg.suite = "";
  EXPECT_EQ(kind_of([&] { cfg.selected_suites(); }), ErrorKind::Config);
  cfg.suite = "nope";
  EXPECT_EQ(kind_of([&] { cfg.selected_suites(); }), ErrorKind::Config);
  cfg.suite = "all";
  EXPECT_EQ(cfg.selected_suites(), suite_names());
}

TEST(Config, ToleranceOverride) {
  RunConfig cfg;
  apply_tolerance_override(cfg, "dhp=1e-6");
  EXPECT_EQ(cfg.get("tolerance.dhp"), 1e-6);
  apply_tolerance_override(cfg, "grid.ode_points=128");
  EXPECT_EQ(cfg.get_int("grid.ode_points"), 128);
  EXPECT_EQ(kind_of([&] { apply_tolerance_override(cfg, "dhp"); }), ErrorKind::Config);
  EXPECT_EQ(kind_of([&] { apply_tolerance_override(cfg, "nothing=1"); }), ErrorKind::Config);
}

TEST(Config, FileParsing) {
  const fs::path dir = scratch("config");
  {
    std::ofstream(dir / "good.ini") << "[run]\nsuite = planar\nparallel = true\n[tolerance]\nresidue = 5e-3\n";
    std::ofstream(dir / "bad.ini") << "[tolerance]\nwhatever = 1\n";
    std::ofstream(dir / "loose.ini") << "suite = planar\n";
  }
  RunConfig cfg;
  load_config_file(cfg, (dir / "good.ini").string());
  EXPECT_EQ(cfg.suite, "planar");
  EXPECT_TRUE(cfg.parallel);
  EXPECT_EQ(cfg.get("tolerance.residue"), 5e-3);
  RunConfig other;
  EXPECT_EQ(kind_of([&] { load_config_file(other, (dir / "bad.ini").string()); }), ErrorKind::Config);
  EXPECT_EQ(kind_of([&] { load_config_file(other, (dir / "loose.ini").string()); }), ErrorKind::Config);
  EXPECT_EQ(kind_of([&] { load_config_file(other, (dir / "missing.ini").string()); }), ErrorKind::Config);
}

TEST(Sweep, RejectsEmptyAndRaggedTables) {
  const fs::path dir = scratch("sweep");
  EXPECT_EQ(kind_of([&] { emit_sweep(dir, Table{"empty", {"a"}, {}}); }), ErrorKind::Precondition);
  EXPECT_EQ(kind_of([&] { emit_sweep(dir, Table{"ragged", {"a", "b"}, {{"1"}}}); }), ErrorKind::Precondition);
  const fs::path p = emit_sweep(dir, Table{"ok", {"a"}, {{"1"}}});
  EXPECT_EQ(slurp(p), "a\r\n1\r\n");
}

TEST(Sweep, BuildsKnownSweepsAndRejectsUnknownParameters) {
  const Table t = build_sweep("limiting", {{"alpha", "0.5"}});
  ASSERT_FALSE(t.rows.empty());
  for (const auto& row : t.rows) EXPECT_EQ(row.size(), t.header.size());
  EXPECT_THROW(build_sweep("limiting", {{"colour", "blue"}}), Error);
  EXPECT_THROW(build_sweep("no-such-sweep", {}), Error);
  EXPECT_FALSE(sweep_names().empty());
}

TEST(Suites, OdeCasesEndWithTheBump) {
  const auto cases = ode_cases();
  ASSERT_FALSE(cases.empty());
  EXPECT_FALSE(cases.back().admissible);
  for (std::size_t i = 0; i + 1 < cases.size(); ++i) EXPECT_TRUE(cases[i].admissible) << cases[i].weight;
}

TEST(Suites, WeightsSuitePasses) {
  RunConfig cfg;
  cfg.suite = "weights";
  const SuiteReport s = run_suite("weights", cfg);
  EXPECT_TRUE(s.passed()) << s.failures();
  EXPECT_GT(s.records.size(), 10u);
  EXPECT_THROW(run_suite("bogus", cfg), Error);
}

TEST(Driver, ReportIsDeterministicAcrossSequentialAndParallelRuns) {
  RunConfig cfg;
  cfg.suite = "constants";
  const fs::path a = scratch("det-a");
  const fs::path b = scratch("det-b");
  write_outputs(run(cfg), a);
  cfg.parallel = true;
  write_outputs(run(cfg), b);
  EXPECT_EQ(slurp(a / "report.json"), slurp(b / "report.json"));
  EXPECT_TRUE(fs::exists(a / "timing.json"));
  EXPECT_TRUE(fs::exists(a / "constants_checks.csv"));
}
