#include <cstdio>
#include <cstdlib>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "l2ext/cli/config.hpp"
#include "l2ext/cli/driver.hpp"
#include "l2ext/constants.hpp"
#include "l2ext/error.hpp"
#include "l2ext/weights.hpp"

namespace {

constexpr int kUsageError = 2;

int verify(const std::string& suite, const std::string& config_path, const std::string& out, bool parallel,
           const std::vector<std::string>& tols) {
  using namespace l2ext::cli;
  RunConfig cfg;
  if (!config_path.empty()) load_config_file(cfg, config_path);
  if (!suite.empty()) cfg.suite = suite;
  if (const char* env = std::getenv(kOutDirEnv); env && *env) cfg.out_dir = env;
  if (!out.empty()) cfg.out_dir = out;
  if (parallel) cfg.parallel = true;
  for (const auto& t : tols) apply_tolerance_override(cfg, t);
  cfg.selected_suites();  // validate before doing any work

  const VerificationReport report = run(cfg);
  write_outputs(report, cfg.out_dir);
  for (const SuiteReport& s : report.suites) {
    std::printf("%-10s %3zu checks, %d failed\n", s.suite.c_str(), s.records.size(), s.failures());
    for (const CheckRecord& r : s.records) {
      if (!r.pass) std::printf("  FAIL %s%s%s\n", r.id.c_str(), r.failure.empty() ? "" : ": ", r.failure.c_str());
    }
  }
  std::printf("report: %s/report.json\n", cfg.out_dir.c_str());
  return report.passed() ? 0 : 1;
}

int sweep(const std::string& name, const std::vector<std::string>& assignments, const std::string& out) {
  std::map<std::string, std::string> params;
  for (const auto& a : assignments) {
    const auto eq = a.find('=');
    if (eq == std::string::npos || eq == 0) l2ext::fail(l2ext::ErrorKind::Config, "sweep parameter '" + a + "' is not key=value");
    params[a.substr(0, eq)] = a.substr(eq + 1);
  }
  std::string dir = "l2ext-out";
  if (const char* env = std::getenv(l2ext::cli::kOutDirEnv); env && *env) dir = env;
  if (!out.empty()) dir = out;
  const auto path = l2ext::cli::emit_sweep(dir, l2ext::cli::build_sweep(name, params));
  std::printf("%s\n", path.string().c_str());
  return 0;
}

int catalog() {
  std::printf("weights:\n");
  for (const auto& e : l2ext::weight_catalog()) std::printf("  %-18s %s\n", e.name.c_str(), e.description.c_str());
  std::printf("domains:\n");
  std::printf("  %-18s %s\n", "disc", "unit disc |z| < 1");
  std::printf("  %-18s %s\n", "annulus(q)", "q < |z| < 1, series order 60");
  std::printf("sweeps:\n");
  for (const auto& [n, d] : l2ext::cli::sweep_names()) std::printf("  %-18s %s\n", n.c_str(), d.c_str());
  std::printf("suites:\n");
  for (const auto& n : l2ext::cli::suite_names()) std::printf("  %s\n", n.c_str());
  return 0;
}

int constants(const std::string& which) {
  if (which != "all") l2ext::fail(l2ext::ErrorKind::Config, "constants: only 'all' is supported");
  bool ok = true;
  l2ext::cli::Table t{"constants", {"id", "parameters", "closed_form", "master", "quadrature", "spread"}, {}};
  for (const auto& r : l2ext::all_constants()) {
    using l2ext::cli::format_number;
    t.rows.push_back({r.id, r.parameters, format_number(r.closed_form), format_number(r.master),
                      format_number(r.quadrature), format_number(r.spread())});
    ok = ok && r.ok();
  }
  std::fputs(l2ext::cli::to_csv(t).c_str(), stdout);
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Verification harness for optimal L2 extension constants"};
  app.require_subcommand(1);

  std::string suite, config_path, out;
  bool parallel = false;
  std::vector<std::string> tols;
  auto* v = app.add_subcommand("verify", "run verification suites and write reports");
  v->add_option("suite", suite, "weights | ode | extremal | planar | residue | constants | all");
  v->add_option("--config", config_path, "key = value config file with [sections]");
  v->add_option("--out", out, "output directory");
  v->add_flag("--parallel", parallel, "run suites concurrently");
  v->add_option("--tol", tols, "tolerance override key=val")->take_all();

  std::string sweep_name, sweep_out;
  std::vector<std::string> sweep_params;
  auto* s = app.add_subcommand("sweep", "emit a CSV data sweep");
  s->add_option("name", sweep_name, "sweep name (see catalog)")->required();
  s->add_option("params", sweep_params, "key=value parameters");
  s->add_option("--out", sweep_out, "output directory");

  auto* c = app.add_subcommand("catalog", "list built-in weights, domains, sweeps and suites");

  std::string which;
  auto* k = app.add_subcommand("constants", "print every catalog constant computed three ways");
  k->add_option("which", which, "all")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsageError;
  }

  try {
    if (v->parsed()) return verify(suite, config_path, out, parallel, tols);
    if (s->parsed()) return sweep(sweep_name, sweep_params, sweep_out);
    if (c->parsed()) return catalog();
    if (k->parsed()) return constants(which);
  } catch (const l2ext::Error& e) {
    std::fprintf(stderr, "l2ext: %s\n", e.what());
    return e.kind() == l2ext::ErrorKind::Config ? kUsageError : 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "l2ext: %s\n", e.what());
    return 1;
  }
  return kUsageError;
}
