#include <boost/math/special_functions/fpclassify.hpp>  // pchip.hpp uses unqualified isnan
#include <boost/math/interpolators/pchip.hpp>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

#include "l2ext/error.hpp"
#include "l2ext/weights.hpp"

namespace l2ext {
namespace {

// log(1 + e^x) without overflow.
double softplus(double x) { return x > 0.0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x)); }

double logistic(double x) { return x >= 0.0 ? 1.0 / (1.0 + std::exp(-x)) : std::exp(x) / (1.0 + std::exp(x)); }

std::string fmt(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

// Monotone cubic through (x, y), clamped to the end values outside the data.
RealFn monotone_interpolant(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) fail(ErrorKind::Config, "table needs at least two (t, value) rows");
  for (std::size_t i = 1; i < x.size(); ++i) {
    if (!(x[i] > x[i - 1])) fail(ErrorKind::Config, "table abscissae must be strictly increasing");
  }
  for (double v : y) {
    if (!(v > 0.0)) fail(ErrorKind::PositivityViolation, "table values must be positive");
  }
  const double lo = x.front();
  const double hi = x.back();
  const double ylo = y.front();
  const double yhi = y.back();
  if (x.size() < 4) {
    // Too few points for pchip; fall back to piecewise linear.
    return [x, y](double t) {
      if (t <= x.front()) return y.front();
      if (t >= x.back()) return y.back();
      std::size_t i = 1;
      while (x[i] < t) ++i;
      const double s = (t - x[i - 1]) / (x[i] - x[i - 1]);
      return y[i - 1] + s * (y[i] - y[i - 1]);
    };
  }
  auto spline = std::make_shared<boost::math::interpolators::pchip<std::vector<double>>>(
      std::vector<double>(x), std::vector<double>(y));
  return [spline, lo, hi, ylo, yhi](double t) {
    if (t <= lo) return ylo;
    if (t >= hi) return yhi;
    return (*spline)(t);
  };
}

std::pair<std::vector<double>, std::vector<double>> read_two_columns(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::Io, "cannot open table " + path);
  std::vector<double> a;
  std::vector<double> b;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    for (char& ch : line) {
      if (ch == ',' || ch == ';' || ch == '\t') ch = ' ';
    }
    std::istringstream row(line);
    double x = 0.0;
    double y = 0.0;
    if (!(row >> x)) continue;
    std::string rest;
    if (!(row >> y) || (row >> rest)) {
      fail(ErrorKind::Config, path + ":" + std::to_string(lineno) + ": expected two numeric columns");
    }
    a.push_back(x);
    b.push_back(y);
  }
  return {a, b};
}

std::vector<double> parse_args(const std::string& args, const std::string& spec) {
  std::vector<double> out;
  std::istringstream in(args);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      while (used < item.size() && std::isspace(static_cast<unsigned char>(item[used]))) ++used;
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      fail(ErrorKind::Config, "bad numeric argument '" + item + "' in weight " + spec);
    }
  }
  return out;
}

}  // namespace

double smooth_bump(double x) {
  if (x <= -1.0 || x >= 1.0) return 0.0;
  return std::exp(1.0 - 1.0 / (1.0 - x * x));
}

WeightSpec weight_const(double A) {
  WeightSpec w;
  w.name = A == 0.0 ? "const" : "const(" + fmt(A) + ")";
  w.A = A;
  w.log_density = [](double t) { return -t; };
  w.density_d1 = [](double t) { return -std::exp(-t); };
  w.log_density_d2 = [](double) { return 0.0; };
  if (std::isfinite(A)) w.analytic_integral = AnalyticValue{std::exp(A), "int_{-A}^inf e^{-t} dt = e^A"};
  return w;
}

WeightSpec weight_ohsawa2(int m, double eps) {
  if (m < 1 || !(eps > 0.0)) fail(ErrorKind::Precondition, "ohsawa2 needs m >= 1 and eps > 0");
  WeightSpec w;
  w.name = "ohsawa2(" + std::to_string(m) + "," + fmt(eps) + ")";
  w.A = kInf;
  const double mm = m;
  const double p = mm + eps;
  w.log_density = [mm, p](double t) { return -p * softplus(-t / mm) - t; };
  w.density_d1 = [mm, p](double t) {
    const double g = std::exp(-p * softplus(-t / mm) - t);
    return g * (p / mm * logistic(-t / mm) - 1.0);
  };
  w.log_density_d2 = [mm, p](double t) { return -p / (mm * mm) * logistic(-t / mm) * logistic(t / mm); };
  // Substituting u = e^{-t/m} turns the integral into m B(m, eps).
  w.analytic_integral = AnalyticValue{mm * std::beta(mm, eps), "m B(m, eps)"};
  return w;
}

WeightSpec weight_concise(double eps) {
  WeightSpec w = weight_ohsawa2(1, eps);
  w.name = "concise(" + fmt(eps) + ")";
  w.analytic_integral = AnalyticValue{1.0 / eps, "1/eps"};
  return w;
}

WeightSpec weight_demailly(double r) {
  if (!(r > 0.0)) fail(ErrorKind::Precondition, "demailly needs r > 0");
  WeightSpec w;
  w.name = "demailly(" + fmt(r) + ")";
  w.A = -2.0 * r;
  w.log_density = [](double t) { return -2.0 * std::log(t); };
  w.density_d1 = [](double t) { return -2.0 / (t * t * t); };
  w.log_density_d2 = [](double t) { return 2.0 / (t * t); };
  w.analytic_integral = AnalyticValue{1.0 / (2.0 * r), "int_{2r}^inf t^{-2} dt = 1/(2r)"};
  return w;
}

WeightSpec weight_dhp(double b, double alpha) {
  if (!(b > 0.0)) fail(ErrorKind::Precondition, "dhp needs b > 0");
  WeightSpec w;
  w.name = "dhp(" + fmt(b) + "," + fmt(alpha) + ")";
  w.A = -alpha;
  w.log_density = [b](double t) { return -b * t; };
  w.density_d1 = [b](double t) { return -b * std::exp(-b * t); };
  w.log_density_d2 = [](double) { return 0.0; };
  w.analytic_integral = AnalyticValue{std::exp(-b * alpha) / b, "int_alpha^inf e^{-bt} dt = e^{-b alpha}/b"};
  return w;
}

WeightSpec weight_limiting(double alpha) {
  if (!(alpha > -1.0)) fail(ErrorKind::Precondition, "limiting needs alpha > -1");
  WeightSpec w;
  w.name = "limiting(" + fmt(alpha) + ")";
  w.A = 0.0;
  w.log_density = [alpha](double t) { return t < 1.0 ? alpha * std::log(t) - t : -t; };
  if (alpha != 0.0) w.endpoint = EndpointPower{alpha, [](double d) { return std::exp(-d); }};
  return w;
}

WeightSpec weight_mv(std::string name, RealFn gain) {
  WeightSpec w;
  w.name = std::move(name);
  w.A = -1.0;
  w.log_density = [gain = std::move(gain)](double t) { return -std::log(gain(t)); };
  return w;
}

WeightSpec weight_mv_power(double p) {
  WeightSpec w = weight_mv("mv(" + fmt(p) + ")", [p](double t) { return std::pow(t, p); });
  w.density_d1 = [p](double t) { return -p * std::pow(t, -p - 1.0); };
  w.log_density_d2 = [p](double t) { return p / (t * t); };
  if (p > 1.0) w.analytic_integral = AnalyticValue{1.0 / (p - 1.0), "int_1^inf t^{-p} dt = 1/(p-1)"};
  return w;
}

WeightSpec weight_bump() {
  WeightSpec w;
  w.name = "bump";
  w.A = 0.0;
  w.log_density = [](double t) { return std::log(1.0 + 99.0 * smooth_bump((t - 1.0) / 0.1)) - t; };
  return w;
}

WeightSpec weight_from_table(std::string name, double A, const std::vector<double>& t, const std::vector<double>& c) {
  RealFn interp = monotone_interpolant(t, c);
  WeightSpec w;
  w.name = std::move(name);
  w.A = A;
  w.log_density = [interp](double x) { return std::log(interp(x)) - x; };
  return w;
}

WeightSpec load_weight_table(const std::string& path, double A) {
  auto [t, c] = read_two_columns(path);
  return weight_from_table("table(" + path + ")", A, t, c);
}

WeightSpec weight_by_name(const std::string& spec) {
  const auto open = spec.find('(');
  const std::string head = spec.substr(0, open);
  std::string args;
  if (open != std::string::npos) {
    if (spec.back() != ')') fail(ErrorKind::Config, "unbalanced parentheses in weight " + spec);
    args = spec.substr(open + 1, spec.size() - open - 2);
  }
  auto nums = [&](std::size_t want) {
    auto v = parse_args(args, spec);
    if (v.size() != want) fail(ErrorKind::Config, spec + ": expected " + std::to_string(want) + " arguments");
    return v;
  };
  if (head == "const") return args.empty() ? weight_const() : weight_const(nums(1)[0]);
  if (head == "ohsawa2") {
    const auto v = nums(2);
    return weight_ohsawa2(static_cast<int>(v[0]), v[1]);
  }
  if (head == "concise") return weight_concise(nums(1)[0]);
  if (head == "demailly") return weight_demailly(nums(1)[0]);
  if (head == "dhp") {
    const auto v = nums(2);
    return weight_dhp(v[0], v[1]);
  }
  if (head == "limiting") return weight_limiting(nums(1)[0]);
  if (head == "bump" && args.empty()) return weight_bump();
  if (head == "mv") {
    char* end = nullptr;
    const double p = std::strtod(args.c_str(), &end);
    if (!args.empty() && end == args.c_str() + args.size()) return weight_mv_power(p);
    auto [t, g] = read_two_columns(args);
    return weight_mv("mv(" + args + ")", monotone_interpolant(t, g));
  }
  if (head == "table") return load_weight_table(args, 0.0);
  fail(ErrorKind::Config, "unknown weight '" + spec + "'");
}

std::vector<CatalogEntry> weight_catalog() {
  return {
      {"const", "c = 1 on (-A, inf); const(A) sets A (default 0)"},
      {"ohsawa2(m,eps)", "c = (1 + e^{-t/m})^{-m-eps}, A = inf"},
      {"concise(eps)", "c = (1 + e^{-t})^{-1-eps}, A = inf"},
      {"demailly(r)", "c = e^t t^{-2}, A = -2r"},
      {"dhp(b,alpha)", "c = e^{(1-b)t}, A = -alpha"},
      {"limiting(alpha)", "c = t^alpha on (0,1), 1 on [1, inf), A = 0"},
      {"mv(p)", "c = e^t / t^p on (1, inf); mv(<path>) reads a gain table (t, g)"},
      {"bump", "c = 1 + 99 bump((t-1)/0.1), A = 0; fails both inequalities"},
      {"table(<path>)", "two-column (t, c) table on (0, inf), monotone cubic interpolation"},
  };
}

}  // namespace l2ext
