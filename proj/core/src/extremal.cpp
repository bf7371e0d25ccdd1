#include "l2ext/extremal.hpp"

#include <Eigen/Dense>
#include <Eigen/IterativeLinearSolvers>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "l2ext/error.hpp"

namespace l2ext {
namespace {

constexpr double kPi = std::numbers::pi;

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

// c at t, using the boundary limit when t sits on -A.
double c_at(const WeightSpec& w, double t) {
  if (t > w.lower()) return w.eval(t);
  return boundary_value(w) * std::exp(-w.A);
}

double tail_integral(const WeightSpec& w, double from) {
  if (from <= w.lower()) return weight_moment(w, 0);
  return integrate_density(w, from, kInf);
}

std::string num(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

void enumerate(int m, int K, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == m) {
    out.push_back(cur);
    return;
  }
  int used = 0;
  for (int v : cur) used += v;
  for (int v = 0; v + used <= K; ++v) {
    cur.push_back(v);
    enumerate(m, K, cur, out);
    cur.pop_back();
  }
}

int degree(const std::vector<int>& k) {
  int d = 0;
  for (int v : k) d += v;
  return d;
}

// Sphere integral of xi^k conj(xi^l) over S^{2m-1}; real for these monomials.
class SphereRule {
 public:
  SphereRule(int m, int K) : m_(m), n_theta_(4 * K + 8), gl_(quad::gauss_legendre(48, 0.0, kPi / 2)) {}

  double operator()(const std::vector<int>& k, const std::vector<int>& l) const {
    double torus = 1.0;
    for (int j = 0; j < m_; ++j) torus *= trapezoid(k[j] - l[j]);
    if (torus == 0.0) return 0.0;
    const auto p = [&](int j) { return k[j] + l[j]; };
    if (m_ == 1) return torus;
    if (m_ == 2) return torus * angle(p(0) + 1, p(1) + 1);
    // z1 = cos a, z2 = sin a cos b, z3 = sin a sin b; dsigma = cos a sin^3 a cos b sin b.
    return torus * angle(p(0) + 1, p(1) + p(2) + 3) * angle(p(1) + 1, p(2) + 1);
  }

 private:
  // int_0^{2 pi} e^{i n theta} d theta with the trapezoid rule (exact here).
  double trapezoid(int n) const {
    double s = 0.0;
    for (int j = 0; j < n_theta_; ++j) s += std::cos(n * 2.0 * kPi * j / n_theta_);
    const double v = s * 2.0 * kPi / n_theta_;
    return std::abs(v) < 1e-12 ? 0.0 : v;
  }
  // int_0^{pi/2} cos^p a sin^q a da by Gauss-Legendre.
  double angle(int p, int q) const {
    double s = 0.0;
    for (const auto& nd : gl_) s += nd.w * std::pow(std::cos(nd.x), p) * std::pow(std::sin(nd.x), q);
    return s;
  }

  int m_;
  int n_theta_;
  std::vector<quad::Node> gl_;
};

}  // namespace

ModelBall ModelBall::plain_ball(int m, double A) {
  ModelBall b;
  b.m = m;
  b.A = A;
  b.plain = true;
  b.a = 0.0;
  b.delta = 0.0;
  return b;
}

double ModelBall::radius() const { return std::exp(A / (2.0 * m)); }

double ModelBall::phi(double r) const {
  if (plain) return 0.0;
  return (1.0 + delta) * m * std::max(2.0 * std::log(r), 2.0 * std::log(a));
}

double ModelBall::Psi(double r) const {
  const double lr = 2.0 * std::log(r);
  if (plain) return m * lr;
  return -m * std::max(lr, 2.0 * std::log(a)) + m * lr + A - eps;
}

double ModelBall::density(const WeightSpec& w, double r) const { return c_at(w, -Psi(r)) * std::exp(-phi(r)); }

void ModelBall::validate() const {
  if (m < 1 || m > 3) fail(ErrorKind::Precondition, "model ball supports m = 1..3");
  if (!std::isfinite(A)) fail(ErrorKind::UnsupportedDomain, "model ball needs a finite A");
  if (plain) return;
  if (!(a > 0.0 && a < 1.0)) fail(ErrorKind::Precondition, "model ball needs 0 < a < 1");
  if (!(a < radius())) fail(ErrorKind::Precondition, "model ball needs a below the radius");
  if (!(delta > 0.0)) fail(ErrorKind::Precondition, "model ball needs delta > 0");
  if (!(eps >= 0.0)) fail(ErrorKind::Precondition, "model ball needs eps >= 0");
  // Sampled invariants: Psi < A (strictly below when eps > 0), convexity in log r.
  const double R = radius();
  const int n = 200;
  for (int i = 1; i < n; ++i) {
    const double r = R * i / n;
    if (eps > 0.0 && !(Psi(r) < A)) fail(ErrorKind::Consistency, "Psi >= A at r = " + num(r));
  }
  const double s0 = std::log(a) - 3.0;
  const double s1 = std::log(R);
  const double h = (s1 - s0) / n;
  auto second = [&](auto f, double s) { return f(std::exp(s + h)) - 2.0 * f(std::exp(s)) + f(std::exp(s - h)); };
  for (int i = 1; i < n; ++i) {
    const double s = s0 + h * i;
    const double tol = 1e-9 * (1.0 + std::abs(phi(std::exp(s))));
    if (second([this](double r) { return phi(r); }, s) < -tol) fail(ErrorKind::Consistency, "phi not convex");
    if (second([this](double r) { return phi(r) + (1.0 + delta) * Psi(r); }, s) < -tol) {
      fail(ErrorKind::Consistency, "phi + (1+delta) Psi not convex");
    }
  }
}

double ball_volume(int m) { return std::pow(kPi, m) / factorial(m); }

// Where Psi varies, the substitution t = -Psi turns r^p dr into a multiple of
// e^{-(p+1) t / 2m} dt, so the integrand becomes the log-space density times
// e^{-n t / 2m} and never overflows near r = 0.
double radial_moment(const ModelBall& ball, const WeightSpec& w, int n) {
  const int m = ball.m;
  const int p = n + 2 * m - 1;
  quad::Tolerance tol;
  tol.rel = 1e-14;
  const RealFn kernel = [n, m](double t) { return std::exp(-n * t / (2.0 * m)); };
  if (ball.plain) return integrate_density(w, w.lower(), kInf, kernel, tol) / (2.0 * m);
  const double start = -ball.A + ball.eps;
  const double log_pref =
      -ball.phi(ball.a) + (p + 1) * std::log(ball.a) - (p + 1) * (ball.A - ball.eps) / (2.0 * m) - std::log(2.0 * m);
  const double inner = std::exp(log_pref) * integrate_density(w, start, kInf, kernel, tol);
  const double c_flat = c_at(w, start);
  auto outer = [&](double r) { return c_flat * std::exp(-ball.phi(r)) * std::pow(r, p); };
  return inner + quad::integrate(outer, ball.a, ball.radius(), tol).value;
}

RadialIntegral radial_integral_both(const ModelBall& ball, const WeightSpec& w) {
  ball.validate();
  RadialIntegral out;
  const double vol = ball_volume(ball.m);
  if (ball.plain) {
    out.closed_form = vol * weight_moment(w, 0);
  } else {
    const double start = -ball.A + ball.eps;
    const double a_pow = std::pow(ball.a, -2.0 * ball.m * ball.delta);
    out.closed_form = vol * (a_pow * std::exp(start) * tail_integral(w, start) +
                             c_at(w, start) * (a_pow - std::exp(-ball.delta * ball.A)) / ball.delta);
  }
  out.quadrature = 2.0 * ball.m * vol * radial_moment(ball, w, 0);
  const double spread = std::abs(out.closed_form - out.quadrature) / std::abs(out.closed_form);
  if (!(spread <= 1e-8)) {
    fail(ErrorKind::Consistency, "radial integral: closed form " + num(out.closed_form) + " vs quadrature " +
                                     num(out.quadrature));
  }
  return out;
}

double radial_integral(const ModelBall& ball, const WeightSpec& w) { return radial_integral_both(ball, w).closed_form; }

LeastNormResult least_norm_extension(const ModelBall& ball, const WeightSpec& w, std::complex<double> f0,
                                     const LeastNormOptions& opts) {
  ball.validate();
  const int K = opts.K;
  if (K < 4) fail(ErrorKind::Precondition, "least_norm_extension needs a degree cap K >= 4");
  const int m = ball.m;

  LeastNormResult res;
  std::vector<int> cur;
  enumerate(m, K, cur, res.multi_indices);
  std::stable_sort(res.multi_indices.begin(), res.multi_indices.end(),
                   [](const auto& x, const auto& y) { return degree(x) < degree(y); });
  const int n = static_cast<int>(res.multi_indices.size());

  std::vector<double> radial(static_cast<std::size_t>(2 * K + 1));
  for (int d = 0; d <= 2 * K; ++d) {
    radial[static_cast<std::size_t>(d)] = radial_moment(ball, w, d);
    if (!std::isfinite(radial[static_cast<std::size_t>(d)])) {
      fail(ErrorKind::DegreeCap, "weighted moment of degree " + std::to_string(d) + " is not finite");
    }
  }
  const SphereRule sphere(m, K);
  Eigen::MatrixXd gram(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j <= i; ++j) {
      const auto& ki = res.multi_indices[static_cast<std::size_t>(i)];
      const auto& kj = res.multi_indices[static_cast<std::size_t>(j)];
      const double v = radial[static_cast<std::size_t>(degree(ki) + degree(kj))] * sphere(ki, kj);
      gram(i, j) = v;
      gram(j, i) = v;
    }
  }
  // Strict positivity of the Hessian after diagonal scaling.
  const Eigen::VectorXd diag = gram.diagonal();
  if ((diag.array() <= 0.0).any() || !diag.allFinite()) fail(ErrorKind::DegreeCap, "non-positive monomial norm");
  const Eigen::VectorXd inv_sqrt = diag.array().rsqrt();
  const Eigen::MatrixXd scaled = inv_sqrt.asDiagonal() * gram * inv_sqrt.asDiagonal();
  Eigen::LLT<Eigen::MatrixXd> llt(scaled);
  if (llt.info() != Eigen::Success) fail(ErrorKind::DegreeCap, "monomial Gram matrix is not positive definite");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(scaled, Eigen::EigenvaluesOnly);
  res.min_eigen_scaled = eig.eigenvalues().minCoeff();

  // Free variables: everything except the constant term, which is pinned to 1.
  const int nf = n - 1;
  const Eigen::MatrixXd gff = gram.bottomRightCorner(nf, nf);
  const Eigen::VectorXd rhs = -gram.col(0).tail(nf);
  Eigen::ConjugateGradient<Eigen::MatrixXd, Eigen::Lower | Eigen::Upper, Eigen::DiagonalPreconditioner<double>> cg;
  cg.setTolerance(1e-15);
  cg.setMaxIterations(10 * nf);
  cg.compute(gff);
  Eigen::VectorXd x0 = Eigen::VectorXd::Zero(nf);
  if (opts.start_perturbation != 0.0) {
    for (int i = 0; i < nf; ++i) {
      x0(i) = opts.start_perturbation * std::sin(1.0 + i) / std::sqrt(gff(i, i) / gram(0, 0));
    }
  }
  const Eigen::VectorXd y = cg.solveWithGuess(rhs, x0);
  res.iterations = static_cast<int>(cg.iterations());

  Eigen::VectorXd x(n);
  x(0) = 1.0;
  x.tail(nf) = y;
  const double norm2 = std::norm(f0);
  res.value = norm2 * x.dot(gram * x);
  res.diagonal_value = norm2 * gram(0, 0);
  res.coefficients.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) res.coefficients[static_cast<std::size_t>(i)] = f0 * x(i);
  for (int i = 1; i < n; ++i) res.max_higher = std::max(res.max_higher, std::abs(res.coefficients[static_cast<std::size_t>(i)]));
  return res;
}

double optimality_ratio(int m, const WeightSpec& w, double delta, double A, double a, double eps) {
  ModelBall ball{m, A, a, delta, eps, false};
  const LeastNormResult ln = least_norm_extension(ball, w, 1.0);
  const double start = -A + eps;
  const double scale = std::pow(a, -2.0 * m * delta) * std::exp(eps - A);
  const double target = ball_volume(m) * (tail_integral(w, start) + c_at(w, start) * std::exp(A - eps) / delta);
  return ln.value / scale / target;
}

double boundary_sublimit(double a, double delta, double A) {
  const double p = std::pow(a, -2.0 * delta);
  return (p - std::exp(-delta * A)) / (delta * p);
}

double window_bump(double t, double lo, double hi) { return smooth_bump((2.0 * t - lo - hi) / (hi - lo)); }

namespace {

// Builds the pair for a fixed amplitude; returns false when d2 e^{-t} fails
// to decrease or d2 leaves the positive axis.
bool try_crossing(const RealFn& d1, double r1, double r2, double r3, double up, CrossingPair& pair) {
  auto mass = [](double lo, double hi) {
    return quad::integrate([&](double t) { return window_bump(t, lo, hi) * std::exp(-t); }, lo, hi).value;
  };
  const double down = up * mass(r3, r2) / mass(r2, r1);
  pair.r1 = r1;
  pair.r2 = r2;
  pair.r3 = r3;
  pair.up = up;
  pair.down = down;
  pair.d1 = d1;
  pair.d2 = [d1, r1, r2, r3, up, down](double t) {
    return d1(t) + up * window_bump(t, r3, r2) - down * window_bump(t, r2, r1);
  };
  const int n = 4000;
  const double h = (r1 - r3) / n;
  for (int i = 0; i <= n; ++i) {
    const double t = r3 + h * i;
    if (!(pair.d2(t) > 0.0)) return false;
    if (!(pair.d2(t + h) * std::exp(-t - h) < pair.d2(t) * std::exp(-t))) return false;
  }
  return true;
}

}  // namespace

CrossingPair build_crossing(const RealFn& d1, double r1, double r2, double r3, double up) {
  if (!(0.0 < r3 && r3 < r2 && r2 < r1)) fail(ErrorKind::Precondition, "build_crossing needs 0 < r3 < r2 < r1");
  if (!(up > 0.0)) fail(ErrorKind::Construction, "degenerate crossing: bump amplitude must be positive");
  CrossingPair pair;
  // Halve the amplitude until the monotonicity constraint is met.
  for (int attempt = 0; attempt < 30; ++attempt, up *= 0.5) {
    if (try_crossing(d1, r1, r2, r3, up, pair)) return pair;
  }
  fail(ErrorKind::Construction, "d2 e^{-t} cannot be made decreasing with a positive bump");
}

double crossing_moment(const RealFn& d, int k) {
  return quad::integrate([&](double t) { return d(t) * std::exp(-(k + 1.0) * t); }, 0.0, kInf).value;
}

MomentReport moment_dominance(const CrossingPair& pair, int k_max) {
  MomentReport rep;
  rep.strict = true;
  quad::Tolerance tol;
  tol.rel = 1e-13;
  for (int k = 0; k <= k_max; ++k) {
    auto diff = [&](double t) { return (pair.d2(t) - pair.d1(t)) * std::exp(-(k + 1.0) * t); };
    const double lo = std::min(pair.r3, pair.r1);
    const double hi = std::max(pair.r3, pair.r1);
    const double v = quad::integrate(diff, lo, pair.r2, tol).value + quad::integrate(diff, pair.r2, hi, tol).value;
    rep.differences.push_back(v);
    if (k == 0) {
      rep.k0_difference = v;
      if (std::abs(v) > 1e-10) rep.strict = false;
    } else if (!(v > 0.0)) {
      if (rep.first_failure < 0) rep.first_failure = k;
      rep.strict = false;
    }
  }
  return rep;
}

double disc_polynomial_norm(const RealFn& d, const std::vector<std::complex<double>>& coeffs) {
  const int n_theta = 4 * static_cast<int>(coeffs.size()) + 16;
  auto angular = [&](double r) {
    double s = 0.0;
    for (int j = 0; j < n_theta; ++j) {
      const std::complex<double> z = std::polar(r, 2.0 * kPi * j / n_theta);
      std::complex<double> f = 0.0;
      for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) f = f * z + *it;
      s += std::norm(f);
    }
    return s * 2.0 * kPi / n_theta;
  };
  auto f = [&](double r) { return angular(r) * d(-2.0 * std::log(r)) * r; };
  quad::Tolerance tol;
  tol.rel = 1e-12;
  return quad::integrate(f, 0.0, 1.0, tol).value;
}

DiscTailReport disc_tail_constant(double r, int j_max) {
  if (!(r > 0.0 && r < 1.0)) fail(ErrorKind::Precondition, "disc_tail_constant needs 0 < r < 1");
  DiscTailReport rep;
  rep.bound = 1.0 / (1.0 - std::pow(r, 2.0));
  for (int j = 0; j <= j_max; ++j) {
    // int_disc |z^j|^2 = pi/(j+1); the annulus r < |z| < 1 carries pi (1 - r^{2j+2}) / (j+1).
    const double ratio = 1.0 / (1.0 - std::pow(r, 2.0 * j + 2.0));
    rep.ratios.push_back(ratio);
    rep.constant = std::max(rep.constant, ratio);
  }
  if (rep.constant != rep.bound) fail(ErrorKind::Consistency, "disc tail constant differs from 1/(1-r^2)");
  return rep;
}

}  // namespace l2ext
