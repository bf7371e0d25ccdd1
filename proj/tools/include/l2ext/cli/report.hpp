#pragma once

#include <optional>
#include <string>
#include <vector>

namespace l2ext::cli {

/// One pass/fail check. `anchor` names the statement being checked, or is
/// the literal "plumbing" for harness-only checks.
struct CheckRecord {
  std::string id;
  std::string anchor;
  bool pass = false;
  std::optional<double> measured;
  std::optional<double> expected;
  std::optional<double> tolerance;
  std::optional<double> margin;
  std::string failure;  // set when the computation raised or went non-finite
};

/// Rectangular table destined for a CSV file.
struct Table {
  std::string name;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

struct SuiteReport {
  std::string suite;
  std::vector<CheckRecord> records;
  std::vector<Table> tables;
  double wall_seconds = 0.0;

  bool passed() const;
  int failures() const;
};

struct VerificationReport {
  std::vector<SuiteReport> suites;
  bool passed() const;
};

inline constexpr int kSchemaVersion = 1;
const char* tool_version();

/// %.17g, the form used for every number in reports and tables.
std::string format_number(double x);

/// Deterministic JSON document (no timings). Non-finite numbers become null
/// and their record is marked failed by the suite layer.
std::string to_json(const VerificationReport& report);

/// Wall times per suite, kept apart so the main report stays reproducible.
std::string timing_json(const VerificationReport& report);

/// RFC 4180 quoting: fields containing a comma, quote, CR or LF are quoted
/// with inner quotes doubled. Lines end in CRLF.
std::string csv_field(const std::string& s);
std::string to_csv(const Table& t);

/// The per-check table of a suite.
Table records_table(const SuiteReport& s);

}  // namespace l2ext::cli
