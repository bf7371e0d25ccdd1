#pragma once

#include <map>
#include <string>
#include <vector>

namespace l2ext::cli {

/// Suites in execution order.
const std::vector<std::string>& suite_names();

/// Settings for a verification run. Every tunable lives in `values` under a
/// "section.key" name; only keys listed by known_keys() are accepted.
struct RunConfig {
  std::string suite;                     // one of suite_names() or "all"
  std::string out_dir = "l2ext-out";
  bool parallel = false;
  std::map<std::string, double> values;  // filled with defaults

  RunConfig();

  double get(const std::string& key) const;
  int get_int(const std::string& key) const;
  void set(const std::string& key, double value);

  /// Expands "all" and validates the selector; throws Config when empty or
  /// unknown.
  std::vector<std::string> selected_suites() const;
};

/// Known "section.key" names with their defaults.
const std::map<std::string, double>& known_keys();

/// Reads `key = value` lines grouped under [section] headers. Keys in the
/// [run] section set the suite, output directory, parallel flag and seed.
/// Unknown sections or keys raise Config.
void load_config_file(RunConfig& cfg, const std::string& path);

/// Applies "--tol key=val"; the key may omit the "tolerance." prefix.
void apply_tolerance_override(RunConfig& cfg, const std::string& assignment);

/// Name of the environment variable overriding the output directory.
inline constexpr const char* kOutDirEnv = "L2EXT_OUT_DIR";

}  // namespace l2ext::cli
