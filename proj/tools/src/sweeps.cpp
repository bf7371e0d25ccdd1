#include <algorithm>
#include <cmath>
#include <sstream>

#include "l2ext/cli/driver.hpp"
#include "l2ext/constants.hpp"
#include "l2ext/error.hpp"
#include "l2ext/extremal.hpp"
#include "l2ext/odesys.hpp"
#include "l2ext/planar.hpp"
#include "l2ext/residue.hpp"
#include "l2ext/weights.hpp"

namespace l2ext::cli {
namespace {

using Params = std::map<std::string, std::string>;

class ParamReader {
 public:
  ParamReader(std::string sweep, const Params& p) : sweep_(std::move(sweep)), params_(p) {}

  std::string text(const std::string& key, const std::string& fallback) {
    used_.push_back(key);
    const auto it = params_.find(key);
    return it == params_.end() ? fallback : it->second;
  }

  double number(const std::string& key, double fallback) {
    const std::string t = text(key, "");
    return t.empty() ? fallback : parse(key, t);
  }

  std::vector<double> list(const std::string& key, const std::vector<double>& fallback) {
    const std::string t = text(key, "");
    if (t.empty()) return fallback;
    std::vector<double> out;
    std::stringstream ss(t);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse(key, item));
    if (out.empty()) fail(ErrorKind::Config, "sweep " + sweep_ + ": empty list for '" + key + "'");
    return out;
  }

  /// Rejects keys that no reader asked for.
  void finish() const {
    for (const auto& [k, v] : params_) {
      if (std::find(used_.begin(), used_.end(), k) == used_.end()) {
        fail(ErrorKind::Config, "sweep " + sweep_ + ": unknown parameter '" + k + "'");
      }
    }
  }

 private:
  double parse(const std::string& key, const std::string& t) const {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(t, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != t.size()) fail(ErrorKind::Config, "sweep " + sweep_ + ": bad number '" + t + "' for " + key);
    return v;
  }

  std::string sweep_;
  const Params& params_;
  std::vector<std::string> used_;
};

std::string num(double x) { return format_number(x); }

Table optimality(ParamReader& p) {
  const int m = static_cast<int>(p.number("m", 1));
  const double delta = p.number("delta", 1.0);
  const auto as = p.list("a", {1e-2, 1e-3, 1e-4, 1e-5});
  const auto epss = p.list("eps", {1e-3});
  p.finish();
  Table t{"optimality", {"a", "eps", "ratio"}, {}};
  for (double eps : epss) {
    for (double a : as) t.rows.push_back({num(a), num(eps), num(optimality_ratio(m, weight_const(), delta, 0.0, a, eps))});
  }
  return t;
}

Table suita(ParamReader& p) {
  const double q = p.number("q", 0.5);
  const auto radii = p.list("z0", {0.6, 0.7, 0.85});
  p.finish();
  Table t{"suita", {"domain", "q", "z0", "c_beta", "B", "gap", "error_bound"}, {}};
  for (double z : radii) {
    const bool disc = q == 0.0;
    const SuitaRecord s = suita_check(disc ? PlanarDomain::disc() : PlanarDomain::annulus(q), z);
    t.rows.push_back({disc ? "disc" : "annulus", num(q), num(z), num(s.c_beta), num(s.bergman), num(s.gap),
                      num(s.truncation_error_bound)});
  }
  return t;
}

Table ode(ParamReader& p) {
  const WeightSpec w = weight_by_name(p.text("weight", "const"));
  const double delta = p.number("delta", 0.0);
  const int points = static_cast<int>(p.number("points", 64));
  const double span = p.number("span", 20.0);
  p.finish();
  const std::optional<double> d = delta > 0.0 ? std::optional<double>(delta) : std::nullopt;
  const OdeSolution sol = solve_ode(w, d);
  Table t{"ode", {"t", "u", "s", "ds"}, {}};
  for (double x : interior_grid(w, points, span)) {
    const auto v = sol.derivatives(x);
    t.rows.push_back({num(x), num(v.u), num(v.s), num(v.ds)});
  }
  return t;
}

Table margins(ParamReader& p) {
  const WeightSpec w = weight_by_name(p.text("weight", "bump"));
  const double delta = p.number("delta", 0.0);
  const int points = static_cast<int>(p.number("points", 256));
  p.finish();
  const auto grid = default_grid(w, points);
  const AdmissibilityReport r = delta > 0.0 ? check_cA_delta(w, delta, grid) : check_cA(w, grid);
  Table t{"margins", {"t", "margin"}, {}};
  for (std::size_t i = 0; i < r.grid.size(); ++i) t.rows.push_back({num(r.grid[i]), num(r.margins[i])});
  return t;
}

Table residue(ParamReader& p) {
  const std::string which = p.text("case", "all");
  p.finish();
  Table t{"residue", {"case", "t", "slab", "residual", "limit", "target"}, {}};
  for (const ResidueCase& c : residue_cases()) {
    if (which != "all" && which != c.name) continue;
    const ResidueLimit r = residue_limit(c.config, c.t_list);
    for (std::size_t i = 0; i < r.t.size(); ++i) {
      t.rows.push_back({c.name, num(r.t[i]), num(r.slab[i]), num(r.fit_residuals[i]), num(r.limit), num(r.target)});
    }
  }
  if (t.rows.empty()) fail(ErrorKind::Config, "sweep residue: unknown case '" + which + "'");
  return t;
}

Table limiting(ParamReader& p) {
  const auto alphas = p.list("alpha", {-0.999, -0.99, -0.9, -0.75, -0.5, -0.25, 0.0, 0.25, 0.5, 1.0, 2.0, 4.0});
  p.finish();
  Table t{"limiting", {"alpha", "integral", "bound", "scaled"}, {}};
  for (double a : alphas) {
    const LimitingReport r = limiting_bound(a);
    t.rows.push_back({num(a), num(r.integral), num(r.bound), num(r.scaled)});
  }
  return t;
}

}  // namespace

const std::map<std::string, std::string>& sweep_names() {
  static const std::map<std::string, std::string> names{
      {"optimality", "ratio of the extremal norm to the optimal constant; params m, delta, a, eps"},
      {"suita", "Suita quantities on an annulus (q=0 for the disc); params q, z0"},
      {"ode", "closed-form (u, s, s') along a grid; params weight, delta, points, span"},
      {"margins", "normalized inequality margins; params weight, delta, points"},
      {"residue", "slab values and fit residuals; param case"},
      {"limiting", "limiting-case integrals against (2+alpha)/(1+alpha); param alpha"},
  };
  return names;
}

Table build_sweep(const std::string& name, const std::map<std::string, std::string>& params) {
  ParamReader p(name, params);
  if (name == "optimality") return optimality(p);
  if (name == "suita") return suita(p);
  if (name == "ode") return ode(p);
  if (name == "margins") return margins(p);
  if (name == "residue") return residue(p);
  if (name == "limiting") return limiting(p);
  fail(ErrorKind::Config, "unknown sweep '" + name + "'");
}

}  // namespace l2ext::cli
