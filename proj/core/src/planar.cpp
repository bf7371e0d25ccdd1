#include "l2ext/planar.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <vector>

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include "l2ext/error.hpp"
#include "l2ext/quadrature.hpp"

namespace l2ext {
namespace {

constexpr double kPi = std::numbers::pi;

void require_interior(const PlanarDomain& dom, cplx z, const char* what) {
  if (!dom.contains(z)) fail(ErrorKind::Domain, std::string(what) + " is not an interior point");
}

// sum_{k>N} (k+1) y^k for 0 <= y < 1.
double weighted_geometric_tail(double y, int N) {
  if (y <= 0.0) return 0.0;
  const double yn = std::pow(y, N + 1);
  return yn * ((N + 2.0) / (1.0 - y) + y / ((1.0 - y) * (1.0 - y)));
}

// Bound on the omitted terms of the Green / Robin series at radii rho, rho0.
double green_tail(double q, int N, double rho, double rho0) {
  const double x = std::max({rho * rho0, q * q / (rho * rho0), q * q * rho / rho0, q * q * rho0 / rho});
  if (x >= 1.0) return kPi;  // no useful bound
  return 4.0 * std::pow(x, N + 1) / ((N + 1.0) * (1.0 - q * q) * (1.0 - x));
}

}  // namespace

PlanarDomain PlanarDomain::disc() { return PlanarDomain(Kind::UnitDisc, 0.0, 0); }

PlanarDomain PlanarDomain::annulus(double q, int N) {
  if (!(q > 0.0 && q < 1.0)) fail(ErrorKind::Precondition, "annulus needs 0 < q < 1");
  if (N < 1) fail(ErrorKind::Precondition, "annulus series order must be positive");
  return PlanarDomain(Kind::Annulus, q, N);
}

bool PlanarDomain::contains(cplx z) const {
  const double r = std::abs(z);
  if (!std::isfinite(r) || r >= 1.0) return false;
  return kind_ == Kind::UnitDisc || r > q_;
}

double green(const PlanarDomain& dom, cplx z, cplx z0) {
  require_interior(dom, z, "z");
  require_interior(dom, z0, "z0");
  if (z == z0) fail(ErrorKind::Singularity, "green: z equals the pole");
  if (dom.kind() == PlanarDomain::Kind::UnitDisc) {
    return std::log(std::abs(z - z0)) - std::log(std::abs(1.0 - std::conj(z0) * z));
  }
  const double q = dom.q();
  const double lq = std::log(q);
  double g = std::log(std::abs(z - z0)) - std::log(std::abs(z0)) * std::log(std::abs(z)) / lq;
  const cplx p = z * std::conj(z0);
  const cplx r = z / z0;
  cplx pk = 1.0, rk = 1.0;
  const double q2 = q * q;
  double q2k = 1.0;
  double series = 0.0;
  for (int k = 1; k <= dom.order(); ++k) {
    pk *= p;
    rk *= r;
    q2k *= q2;
    const double ck = 1.0 / (k * (1.0 - q2k));
    const double term = pk.real() - q2k * rk.real() - q2k * (1.0 / rk).real() + q2k * (1.0 / pk).real();
    series += ck * term;
  }
  return g + series;
}

double robin_constant(const PlanarDomain& dom, cplx z0) {
  require_interior(dom, z0, "z0");
  const double rho = std::abs(z0);
  if (dom.kind() == PlanarDomain::Kind::UnitDisc) return -std::log1p(-rho * rho);
  const double q = dom.q();
  const double lr = std::log(rho);
  double v = -lr * lr / std::log(q);
  const double q2 = q * q;
  const double r2 = rho * rho;
  double q2k = 1.0, r2k = 1.0;
  for (int k = 1; k <= dom.order(); ++k) {
    q2k *= q2;
    r2k *= r2;
    v += (r2k - 2.0 * q2k + q2k / r2k) / (k * (1.0 - q2k));
  }
  return v;
}

CapacityEstimate log_capacity(const PlanarDomain& dom, cplx z0) {
  require_interior(dom, z0, "z0");
  const double rho = std::abs(z0);
  const double dist = dom.kind() == PlanarDomain::Kind::UnitDisc ? 1.0 - rho : std::min(1.0 - rho, rho - dom.q());
  const double h0 = 0.25 * dist;
  std::vector<double> samples;
  for (int j = 0; j <= 5; ++j) {
    const double h = std::ldexp(h0, -j);
    double avg = 0.0;
    for (int a = 0; a < 4; ++a) {
      const cplx z = z0 + std::polar(h, 0.5 * kPi * a);
      avg += green(dom, z, z0) - std::log(h);
    }
    samples.push_back(avg / 4.0);
  }
  const auto ex = quad::richardson(samples);
  CapacityEstimate out;
  out.log_value = ex.value;
  out.value = std::exp(ex.value);
  out.extrapolation_spread = ex.spread();
  if (!std::isfinite(ex.value) || ex.spread() > 1e-6) {
    fail(ErrorKind::Convergence, "capacity extrapolation did not settle");
  }
  return out;
}

double bergman_disc_series(cplx z0, int terms) {
  const double r2 = std::norm(z0);
  double s = 0.0;
  double p = 1.0;
  for (int j = 0; j < terms; ++j) {
    s += (j + 1.0) * p;
    p *= r2;
  }
  return s / kPi;
}

BergmanValue bergman(const PlanarDomain& dom, cplx z0) {
  require_interior(dom, z0, "z0");
  const double r2 = std::norm(z0);
  if (dom.kind() == PlanarDomain::Kind::UnitDisc) return {1.0 / (kPi * (1.0 - r2) * (1.0 - r2)), 0.0};
  const double q = dom.q();
  const int N = dom.order();
  double sum = 0.0;
  // Accumulate from the smallest terms (|k| = N) inward.
  for (int j = N; j >= 1; --j) {
    for (int k : {j, -j}) {
      const double norm = k == -1 ? 2.0 * kPi * std::log(1.0 / q) : kPi * (1.0 - std::pow(q, 2.0 * k + 2.0)) / (k + 1.0);
      sum += std::pow(r2, k) / norm;
    }
  }
  sum += 1.0 / (kPi * (1.0 - q * q));
  const double q2 = q * q;
  const double tail = (weighted_geometric_tail(r2, N) + weighted_geometric_tail(q2 / r2, N) / q2) / (kPi * (1.0 - q2));
  return {sum, tail};
}

namespace {

using Wide = boost::multiprecision::cpp_bin_float_50;

// pi*B and c_beta^2 on the annulus, summed in 50-digit arithmetic: the gap is
// of order exp(-2 pi^2 / log(1/q)) relative to either term.
struct WideSuita {
  Wide pi_bergman;
  Wide cbeta_sq;
  double tail_bound;
  int order;
};

WideSuita annulus_suita(double q_in, double rho_in, int min_order) {
  const double r2d = rho_in * rho_in;
  const double q2d = q_in * q_in;
  int N = std::max(min_order, 16);
  auto bound = [&](int n) {
    const double berg = (weighted_geometric_tail(r2d, n) + weighted_geometric_tail(q2d / r2d, n) / r2d) / (1.0 - q2d);
    const double robin = green_tail(q_in, n, rho_in, rho_in);
    return std::pair{berg, robin};
  };
  while (true) {
    const auto [berg, robin] = bound(N);
    if ((berg < 1e-40 && robin < 1e-42) || N >= (1 << 16)) break;
    N *= 2;
  }
  const Wide q = q_in;
  const Wide rho = rho_in;
  const Wide q2 = q * q;
  const Wide r2 = rho * rho;
  const Wide lq = log(q);
  const Wide lr = log(rho);
  // pi*B = sum_{k != -1} (k+1) r^{2k} / (1 - q^{2k+2}) + 1 / (2 r^2 log(1/q)).
  Wide pib = 1 / (2 * r2 * -lq);
  Wide robin = -lr * lr / lq;
  Wide q2k = 1, r2k = 1;
  for (int k = 1; k <= N; ++k) {
    q2k *= q2;
    r2k *= r2;
    const Wide one_minus = 1 - q2k;
    pib += (k + 1) * r2k / (1 - q2k * q2);
    // k' = -(k+1): (k'+1) r^{2k'} / (1 - q^{2k'+2}) = k q^{2k} / ((1 - q^{2k}) r^{2k+2}).
    pib += k * q2k / (one_minus * r2k * r2);
    robin += (r2k - 2 * q2k + q2k / r2k) / (k * one_minus);
  }
  pib += 1 / (1 - q2);
  const auto [berg, rob] = bound(N);
  WideSuita out;
  out.pi_bergman = pib;
  out.cbeta_sq = exp(2 * robin);
  const double cb2 = static_cast<double>(out.cbeta_sq);
  // Series tails plus a generous rounding allowance for 50-digit sums.
  out.tail_bound = berg + 2.0 * cb2 * rob + 1e-44 * (static_cast<double>(pib) + cb2);
  out.order = N;
  return out;
}

}  // namespace

SuitaRecord suita_check(const PlanarDomain& dom, cplx z0) {
  require_interior(dom, z0, "z0");
  SuitaRecord rec;
  rec.z0 = z0;
  if (dom.kind() == PlanarDomain::Kind::UnitDisc) {
    const CapacityEstimate cap = log_capacity(dom, z0);
    const BergmanValue b = bergman(dom, z0);
    rec.c_beta = cap.value;
    rec.bergman = b.value;
    rec.gap = kPi * b.value - cap.value * cap.value;
    rec.truncation_error_bound = 0.0;
    rec.holds = std::abs(rec.gap) <= 1e-9;
    return rec;
  }
  const WideSuita w = annulus_suita(dom.q(), std::abs(z0), dom.order());
  rec.c_beta = static_cast<double>(sqrt(w.cbeta_sq));
  rec.bergman = static_cast<double>(w.pi_bergman / boost::math::constants::pi<Wide>());
  rec.gap = static_cast<double>(w.pi_bergman - w.cbeta_sq);
  rec.truncation_error_bound = w.tail_bound;
  rec.holds = rec.gap > rec.truncation_error_bound;
  return rec;
}

double analytic_capacity_disc(cplx z0) {
  if (!(std::abs(z0) < 1.0)) fail(ErrorKind::Domain, "z0 must lie in the unit disc");
  // Extremal map f(z) = (z - z0) / (1 - conj(z0) z) has sup |f| = 1, so
  // c_B = |f'(z0)|.
  const double r2 = std::norm(z0);
  const cplx denom = 1.0 - std::conj(z0) * z0;
  const double cb = std::abs((1.0 - r2) / (denom * denom));
  const double cbeta = std::exp(robin_constant(PlanarDomain::disc(), z0));
  if (std::abs(cb - cbeta) > 1e-10 * cbeta) fail(ErrorKind::Consistency, "c_B differs from c_beta on the disc");
  return cb;
}

double analytic_capacity(const PlanarDomain& dom, cplx z0) {
  if (dom.kind() != PlanarDomain::Kind::UnitDisc) {
    fail(ErrorKind::UnsupportedDomain, "analytic capacity needs a single-valued |g| = e^G; only the disc is supported");
  }
  return analytic_capacity_disc(z0);
}

cplx l_kernel(const PlanarDomain& dom, cplx z, cplx t) {
  require_interior(dom, z, "z");
  require_interior(dom, t, "t");
  if (z == t) fail(ErrorKind::Singularity, "l_kernel: z equals t");
  const cplx singular = 1.0 / (kPi * (z - t) * (z - t));
  if (dom.kind() == PlanarDomain::Kind::UnitDisc) return singular;
  const double q = dom.q();
  cplx regular = -1.0 / (4.0 * z * t * std::log(q));
  const double q2 = q * q;
  double q2k = 1.0;
  const cplx ratio_zt = z / t;
  const cplx ratio_tz = t / z;
  cplx rz = 1.0, rt = 1.0;  // (z/t)^{k-1}, (t/z)^{k-1}
  for (int k = 1; k <= dom.order(); ++k) {
    q2k *= q2;
    const double coef = k * q2k / (2.0 * (1.0 - q2k));
    regular += coef * (rz / (t * t) + rt / (z * z));
    rz *= ratio_zt;
    rt *= ratio_tz;
  }
  return singular + (2.0 / kPi) * regular;
}

namespace {

double winding(const PlanarDomain& dom, cplx t, double radius, int& samples_used) {
  for (int n = 256; n <= (1 << 18); n *= 2) {
    double total = 0.0;
    bool fine = true;
    cplx prev = l_kernel(dom, std::polar(radius, 0.0), t);
    for (int i = 1; i <= n; ++i) {
      const cplx cur = l_kernel(dom, std::polar(radius, 2.0 * kPi * i / n), t);
      const double d = std::arg(cur / prev);
      if (std::abs(d) >= 0.5) {
        fine = false;
        break;
      }
      total += d;
      prev = cur;
    }
    if (fine) {
      samples_used = n;
      return total / (2.0 * kPi);
    }
  }
  fail(ErrorKind::Convergence, "argument increments did not resolve on the contour");
}

}  // namespace

ZeroCount l_kernel_zero_count(const PlanarDomain& dom, cplx t) {
  require_interior(dom, t, "t");
  ZeroCount out;
  int n_out = 0;
  int n_in = 0;
  out.winding_outer = winding(dom, t, 1.0 - 1e-6, n_out);
  if (dom.kind() == PlanarDomain::Kind::Annulus) out.winding_inner = winding(dom, t, dom.q() + 1e-6, n_in);
  out.samples = n_out + n_in;
  // Zeros minus poles inside equals the net winding; L has a double pole at t.
  out.zeros = static_cast<int>(std::lround(out.winding_outer - out.winding_inner)) + 2;
  return out;
}

}  // namespace l2ext
