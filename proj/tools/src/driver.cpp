#include "l2ext/cli/driver.hpp"

#include <chrono>
#include <fstream>
#include <future>
#include <vector>

#include "l2ext/cli/suites.hpp"
#include "l2ext/error.hpp"

namespace l2ext::cli {
namespace {

SuiteReport timed_suite(const std::string& name, const RunConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  SuiteReport rep = run_suite(name, cfg);
  rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorKind::Io, "cannot open " + path.string() + " for writing");
  out << text;
  out.close();
  if (!out) fail(ErrorKind::Io, "write to " + path.string() + " failed");
}

}  // namespace

VerificationReport run(const RunConfig& cfg) {
  const std::vector<std::string> names = cfg.selected_suites();
  VerificationReport report;
  if (cfg.parallel) {
    std::vector<std::future<SuiteReport>> jobs;
    for (const auto& n : names) jobs.push_back(std::async(std::launch::async, timed_suite, n, std::cref(cfg)));
    for (auto& j : jobs) report.suites.push_back(j.get());
  } else {
    for (const auto& n : names) report.suites.push_back(timed_suite(n, cfg));
  }
  return report;
}

std::filesystem::path emit_sweep(const std::filesystem::path& dir, const Table& table) {
  if (table.name.empty()) fail(ErrorKind::Precondition, "sweep table needs a name");
  if (table.rows.empty()) fail(ErrorKind::Precondition, "sweep '" + table.name + "' has no rows");
  for (const auto& r : table.rows) {
    if (r.size() != table.header.size()) fail(ErrorKind::Precondition, "sweep '" + table.name + "' has ragged rows");
  }
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) fail(ErrorKind::Io, "cannot create " + dir.string() + ": " + ec.message());
  const std::filesystem::path path = dir / (table.name + ".csv");
  write_file(path, to_csv(table));
  return path;
}

void write_outputs(const VerificationReport& report, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) fail(ErrorKind::Io, "cannot create " + dir.string() + ": " + ec.message());
  write_file(dir / "report.json", to_json(report));
  write_file(dir / "timing.json", timing_json(report));
  for (const SuiteReport& s : report.suites) {
    write_file(dir / (s.suite + "_checks.csv"), to_csv(records_table(s)));
    for (const Table& t : s.tables) {
      if (!t.rows.empty()) emit_sweep(dir, t);
    }
  }
}

}  // namespace l2ext::cli
