#include "l2ext/cli/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <cmath>
#include <stdexcept>

#include "l2ext/error.hpp"

namespace l2ext::cli {

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"weights", "ode", "extremal", "planar", "residue", "constants"};
  return names;
}

const std::map<std::string, double>& known_keys() {
  static const std::map<std::string, double> keys{
      {"tolerance.constants", 1e-8},  {"tolerance.dhp", 1e-10},        {"tolerance.residual", 1e-6},
      {"tolerance.suita_disc", 1e-9}, {"tolerance.residue", 1e-3},     {"tolerance.optimality", 1e-2},
      {"tolerance.least_norm", 1e-9}, {"tolerance.coefficients", 1e-8}, {"tolerance.moment_k0", 1e-10},
      {"grid.ode_points", 256},       {"grid.span", 50},               {"extremal.K", 8},
      {"extremal.k_max", 50},         {"extremal.j_max", 40},          {"planar.order", 60},
      {"run.seed", 0},
  };
  return keys;
}

RunConfig::RunConfig() : values(known_keys()) {}

double RunConfig::get(const std::string& key) const {
  const auto it = values.find(key);
  if (it == values.end()) fail(ErrorKind::Config, "unknown key '" + key + "'");
  return it->second;
}

int RunConfig::get_int(const std::string& key) const {
  const double v = get(key);
  if (v != std::floor(v)) fail(ErrorKind::Config, "key '" + key + "' needs an integer");
  return static_cast<int>(v);
}

void RunConfig::set(const std::string& key, double value) {
  if (!known_keys().count(key)) fail(ErrorKind::Config, "unknown key '" + key + "'");
  if (!std::isfinite(value)) fail(ErrorKind::Config, "key '" + key + "' needs a finite value");
  if (key.rfind("tolerance.", 0) == 0 && !(value > 0.0)) fail(ErrorKind::Config, "tolerance '" + key + "' must be positive");
  values[key] = value;
}

std::vector<std::string> RunConfig::selected_suites() const {
  if (suite.empty()) fail(ErrorKind::Config, "empty suite selector");
  if (suite == "all") return suite_names();
  for (const auto& n : suite_names()) {
    if (n == suite) return {suite};
  }
  fail(ErrorKind::Config, "unknown suite '" + suite + "'");
}

namespace {

double parse_number(const std::string& key, const std::string& text) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    fail(ErrorKind::Config, "key '" + key + "' has a non-numeric value '" + text + "'");
  }
  if (used != text.size()) fail(ErrorKind::Config, "key '" + key + "' has trailing text '" + text + "'");
  return v;
}

bool parse_bool(const std::string& key, const std::string& text) {
  if (text == "true" || text == "1" || text == "yes") return true;
  if (text == "false" || text == "0" || text == "no") return false;
  fail(ErrorKind::Config, "key '" + key + "' needs true or false");
}

}  // namespace

void load_config_file(RunConfig& cfg, const std::string& path) {
  namespace pt = boost::property_tree;
  pt::ptree tree;
  try {
    pt::read_ini(path, tree);
  } catch (const pt::ini_parser_error& e) {
    fail(ErrorKind::Config, std::string("cannot parse config: ") + e.what());
  }
  for (const auto& [section, body] : tree) {
    if (body.empty()) fail(ErrorKind::Config, "key '" + section + "' must sit inside a [section]");
    for (const auto& [key, node] : body) {
      const std::string full = section + "." + key;
      const std::string text = node.get_value<std::string>();
      if (full == "run.suite") {
        cfg.suite = text;
      } else if (full == "run.out") {
        cfg.out_dir = text;
      } else if (full == "run.parallel") {
        cfg.parallel = parse_bool(full, text);
      } else {
        cfg.set(full, parse_number(full, text));
      }
    }
  }
}

void apply_tolerance_override(RunConfig& cfg, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0) fail(ErrorKind::Config, "--tol expects key=value, got '" + assignment + "'");
  std::string key = assignment.substr(0, eq);
  if (key.find('.') == std::string::npos) key = "tolerance." + key;
  cfg.set(key, parse_number(key, assignment.substr(eq + 1)));
}

}  // namespace l2ext::cli
