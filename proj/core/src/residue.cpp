#include "l2ext/residue.hpp"

#include <boost/math/tools/toms748_solve.hpp>
#include <cmath>
#include <cstdint>
#include <numbers>

#include "l2ext/error.hpp"
#include "l2ext/quadrature.hpp"

namespace l2ext {
namespace {

constexpr double kPi = std::numbers::pi;

struct Direction {
  std::vector<std::complex<double>> xi;
  double weight;
};

struct SPoint {
  std::vector<std::complex<double>> x;
  double weight;
};

std::vector<Direction> sphere_rule(int d, int n_theta, int n_alpha) {
  std::vector<Direction> out;
  if (d == 1) {
    for (int i = 0; i < n_theta; ++i) out.push_back({{std::polar(1.0, 2.0 * kPi * i / n_theta)}, 2.0 * kPi / n_theta});
    return out;
  }
  // S^3: (cos a e^{i t1}, sin a e^{i t2}), d sigma = cos a sin a da dt1 dt2.
  const auto gl = quad::gauss_legendre(n_alpha, 0.0, 0.5 * kPi);
  const double dt = 2.0 * kPi / n_theta;
  for (const auto& a : gl) {
    for (int i = 0; i < n_theta; ++i) {
      for (int j = 0; j < n_theta; ++j) {
        out.push_back({{std::polar(std::cos(a.x), dt * i), std::polar(std::sin(a.x), dt * j)},
                       a.w * std::cos(a.x) * std::sin(a.x) * dt * dt});
      }
    }
  }
  return out;
}

std::vector<SPoint> s_rule(const PolarConfig& cfg, int n_r, int n_theta) {
  if (cfg.l == 0) return {{{}, 1.0}};
  std::vector<SPoint> out;
  const auto gl = quad::gauss_legendre(n_r, 0.0, cfg.s_radius);
  const double dt = 2.0 * kPi / n_theta;
  for (const auto& r : gl) {
    for (int i = 0; i < n_theta; ++i) out.push_back({{std::polar(r.x, dt * i)}, r.w * r.x * dt});
  }
  return out;
}

void validate(const PolarConfig& cfg) {
  const bool ok = (cfg.n == 1 && cfg.l == 0) || (cfg.n == 2 && (cfg.l == 0 || cfg.l == 1));
  if (!ok) fail(ErrorKind::Precondition, "supported configurations are (n, l) = (1, 0), (2, 0), (2, 1)");
  if (!cfg.psi || !cfg.f) fail(ErrorKind::Precondition, "polar configuration needs psi and f");
  if (cfg.l == 1 && !(cfg.s_radius > 0.0 && cfg.s_radius < 1.0)) {
    fail(ErrorKind::Range, "the disc in S must lie inside the unit polydisc");
  }
}

PolarConfig::Point make_point(const std::vector<std::complex<double>>& x, const std::vector<std::complex<double>>& xi,
                              double rho) {
  PolarConfig::Point p = x;
  for (const auto& v : xi) p.push_back(rho * v);
  return p;
}

}  // namespace

double sphere_volume(int m) {
  if (m < 0) fail(ErrorKind::Precondition, "sphere_volume needs m >= 0");
  return 2.0 * std::pow(kPi, 0.5 * (m + 1)) / std::tgamma(0.5 * (m + 1));
}

double PolarConfig::Psi(const Point& p) const {
  double r2 = 0.0;
  for (std::size_t j = static_cast<std::size_t>(l); j < p.size(); ++j) r2 += std::norm(p[j]);
  return normal_dim() * std::log(r2) + psi(p);
}

SlabValue slab_integral(const PolarConfig& cfg, double t) {
  validate(cfg);
  const int d = cfg.normal_dim();
  const double prefactor = 2.0 * d / sphere_volume(2 * d - 1);
  const auto dirs = sphere_rule(d, cfg.n_theta, cfg.n_alpha);
  const auto spts = s_rule(cfg, cfg.n_x_radial, cfg.n_theta);
  const auto gl = quad::gauss_legendre(cfg.n_s);

  SlabValue out;
  double total = 0.0;
  for (const auto& sp : spts) {
    double inner = 0.0;
    for (const auto& dir : dirs) {
      // Psi along the ray as a function of s = log rho.
      auto Psi_s = [&](double s) { return 2.0 * d * s + cfg.psi(make_point(sp.x, dir.xi, std::exp(s))); };
      auto solve = [&](double level) {
        auto fn = [&](double s) { return Psi_s(s) - level; };
        double lo = level / (2.0 * d) - 1.0;
        double hi = level / (2.0 * d) + 1.0;
        for (int i = 0; i < 60 && fn(lo) > 0.0; ++i) lo -= 1.0;
        for (int i = 0; i < 60 && fn(hi) < 0.0; ++i) hi += 1.0;
        if (fn(lo) > 0.0 || fn(hi) < 0.0) fail(ErrorKind::Range, "slab boundary not bracketed along a ray");
        std::uintmax_t iters = 200;
        const auto root =
            boost::math::tools::toms748_solve(fn, lo, hi, boost::math::tools::eps_tolerance<double>(52), iters);
        return 0.5 * (root.first + root.second);
      };
      const double s_lo = solve(-1.0 - t);
      const double s_hi = solve(-t);
      if (s_hi >= 0.0) fail(ErrorKind::Range, "slab leaves the unit polydisc chart; increase t");
      const double half = 0.5 * (s_hi - s_lo);
      const double mid = 0.5 * (s_hi + s_lo);
      double ray = 0.0;
      for (const auto& nd : gl) {
        const double s = mid + half * nd.x;
        const auto p = make_point(sp.x, dir.xi, std::exp(s));
        // e^{-Psi} dV = e^{-psi} ds dsigma (dV = rho^{2d} ds dsigma).
        ray += nd.w * cfg.f(p) * std::exp(-cfg.psi(p));
      }
      inner += dir.weight * half * ray;
    }
    total += sp.weight * inner;
  }
  out.value = prefactor * total;
  out.nodes = static_cast<long>(spts.size() * dirs.size() * gl.size());
  return out;
}

double residue_target(const PolarConfig& cfg) {
  validate(cfg);
  const std::vector<std::complex<double>> zero_normal(static_cast<std::size_t>(cfg.normal_dim()), 0.0);
  if (cfg.l == 0) {
    const auto p = zero_normal;
    return cfg.f(p) * std::exp(-cfg.psi(p));
  }
  double total = 0.0;
  for (const auto& sp : s_rule(cfg, 64, 256)) {
    const auto p = make_point(sp.x, zero_normal, 0.0);
    total += sp.weight * cfg.f(p) * std::exp(-cfg.psi(p));
  }
  return total;
}

ResidueLimit residue_limit(const PolarConfig& cfg, const std::vector<double>& t_list) {
  if (t_list.size() < 4) fail(ErrorKind::Precondition, "residue_limit needs at least four t values");
  for (std::size_t i = 1; i < t_list.size(); ++i) {
    if (!(t_list[i] > t_list[i - 1])) fail(ErrorKind::Precondition, "t values must increase");
  }
  if (!(t_list.front() > 0.0 && t_list.back() >= 2.0 * t_list.front())) {
    fail(ErrorKind::Precondition, "t values must span a factor of at least two");
  }
  ResidueLimit out;
  out.t = t_list;
  for (double t : t_list) out.slab.push_back(slab_integral(cfg, t).value);

  // Least squares for y = L + c x with x = e^{-t/2}.
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(t_list.size());
  for (std::size_t i = 0; i < t_list.size(); ++i) {
    const double x = std::exp(-0.5 * t_list[i]);
    sx += x;
    sy += out.slab[i];
    sxx += x * x;
    sxy += x * out.slab[i];
  }
  const double c = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  out.limit = (sy - c * sx) / n;
  for (std::size_t i = 0; i < t_list.size(); ++i) {
    out.fit_residuals.push_back(out.slab[i] - out.limit - c * std::exp(-0.5 * t_list[i]));
  }
  out.target = residue_target(cfg);
  const double scale = std::abs(out.target) > 0.0 ? std::abs(out.target) : 1.0;
  out.relative_error = std::abs(out.limit - out.target) / scale;

  const double noise = 1e-9 * std::max(1.0, std::abs(out.limit));
  int sign = 0;
  for (std::size_t i = 1; i < out.slab.size(); ++i) {
    const double diff = out.slab[i] - out.slab[i - 1];
    if (std::abs(diff) <= noise) continue;
    const int sg = diff > 0 ? 1 : -1;
    if (sign != 0 && sg != sign) out.monotone_warning = true;
    sign = sg;
  }
  return out;
}

std::vector<ResidueCase> residue_cases() {
  const std::vector<double> ts{6.0, 8.0, 10.0, 12.0};
  std::vector<ResidueCase> out;

  PolarConfig point;
  point.n = 1;
  point.l = 0;
  point.psi = [](const PolarConfig::Point& p) { return p[0].real(); };
  point.f = [](const PolarConfig::Point& p) { return std::exp(-std::norm(p[0])); };
  out.push_back({"point-twisted", point, ts});

  PolarConfig disc;
  disc.n = 2;
  disc.l = 1;
  disc.s_radius = 0.5;
  disc.n_theta = 32;
  disc.psi = [](const PolarConfig::Point&) { return 0.0; };
  disc.f = [](const PolarConfig::Point& p) { return std::abs(p[0]) < 0.5 ? 1.0 : 0.0; };
  out.push_back({"disc-in-C2", disc, ts});

  PolarConfig origin;
  origin.n = 2;
  origin.l = 0;
  origin.n_theta = 32;
  origin.psi = [](const PolarConfig::Point&) { return 0.0; };
  origin.f = [](const PolarConfig::Point& p) { return std::exp(-std::norm(p[0]) - std::norm(p[1])); };
  out.push_back({"origin-in-C2", origin, ts});
  return out;
}

}  // namespace l2ext
