#include "l2ext/cli/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace l2ext::cli {

bool SuiteReport::passed() const { return failures() == 0; }

int SuiteReport::failures() const {
  return static_cast<int>(std::count_if(records.begin(), records.end(), [](const CheckRecord& r) { return !r.pass; }));
}

bool VerificationReport::passed() const {
  return std::all_of(suites.begin(), suites.end(), [](const SuiteReport& s) { return s.passed(); });
}

const char* tool_version() { return "0.1.0"; }

std::string format_number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

std::string json_string(const std::string& s) {
  std::string out = "\"";
  for (unsigned char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (c < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += static_cast<char>(c);
        }
    }
  }
  return out + "\"";
}

std::string json_number(const std::optional<double>& x) {
  if (!x || !std::isfinite(*x)) return "null";
  return format_number(*x);
}

}  // namespace

std::string to_json(const VerificationReport& report) {
  std::ostringstream os;
  os << "{\n  \"schema\": " << kSchemaVersion << ",\n";
  os << "  \"tool\": \"l2ext\",\n  \"version\": " << json_string(tool_version()) << ",\n";
  os << "  \"passed\": " << (report.passed() ? "true" : "false") << ",\n";
  os << "  \"suites\": [";
  for (std::size_t i = 0; i < report.suites.size(); ++i) {
    const SuiteReport& s = report.suites[i];
    os << (i ? ",\n" : "\n") << "    {\n      \"suite\": " << json_string(s.suite) << ",\n";
    os << "      \"checks\": " << s.records.size() << ",\n      \"failures\": " << s.failures() << ",\n";
    os << "      \"records\": [";
    for (std::size_t j = 0; j < s.records.size(); ++j) {
      const CheckRecord& r = s.records[j];
      os << (j ? ",\n" : "\n") << "        {\"id\": " << json_string(r.id) << ", \"paper_anchor\": " << json_string(r.anchor)
         << ", \"status\": " << (r.pass ? "\"pass\"" : "\"fail\"") << ", \"measured\": " << json_number(r.measured)
         << ", \"expected\": " << json_number(r.expected) << ", \"tolerance\": " << json_number(r.tolerance)
         << ", \"margin\": " << json_number(r.margin);
      if (!r.failure.empty()) os << ", \"failure\": " << json_string(r.failure);
      os << "}";
    }
    os << (s.records.empty() ? "]\n" : "\n      ]\n") << "    }";
  }
  os << (report.suites.empty() ? "]\n" : "\n  ]\n") << "}\n";
  return os.str();
}

std::string timing_json(const VerificationReport& report) {
  std::ostringstream os;
  os << "{\n  \"schema\": " << kSchemaVersion << ",\n  \"wall_seconds\": {";
  for (std::size_t i = 0; i < report.suites.size(); ++i) {
    os << (i ? ",\n" : "\n") << "    " << json_string(report.suites[i].suite) << ": "
       << format_number(report.suites[i].wall_seconds);
  }
  os << "\n  }\n}\n";
  return os.str();
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string to_csv(const Table& t) {
  std::string out;
  auto line = [&out](const std::vector<std::string>& row) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += csv_field(row[i]);
    }
    out += "\r\n";
  };
  line(t.header);
  for (const auto& r : t.rows) line(r);
  return out;
}

Table records_table(const SuiteReport& s) {
  Table t;
  t.name = s.suite + "_checks";
  t.header = {"id", "status", "measured", "expected", "tolerance", "margin", "paper_anchor", "failure"};
  auto num = [](const std::optional<double>& x) { return x && std::isfinite(*x) ? format_number(*x) : std::string(); };
  for (const CheckRecord& r : s.records) {
    t.rows.push_back({r.id, r.pass ? "pass" : "fail", num(r.measured), num(r.expected), num(r.tolerance), num(r.margin),
                      r.anchor, r.failure});
  }
  return t;
}

}  // namespace l2ext::cli
