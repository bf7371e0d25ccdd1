#include "l2ext/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <string>

#include "l2ext/error.hpp"

namespace l2ext::quad {
namespace {

// 15-point Kronrod abscissae/weights with the embedded 7-point Gauss weights.
constexpr double kXgk[8] = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                            0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                            0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                            0.207784955007898467600689403773245, 0.0};
constexpr double kWgk[8] = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                            0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                            0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                            0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                           0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double a;
  double b;
  double value;
  double error;
  int order;  // creation order, breaks ties deterministically
};

struct ByError {
  bool operator()(const Segment& x, const Segment& y) const {
    if (x.error != y.error) return x.error < y.error;
    return x.order > y.order;
  }
};

double checked(const Integrand& f, double t) {
  const double v = f(t);
  if (!std::isfinite(v)) {
    fail(ErrorKind::Domain, "integrand is not finite at t = " + std::to_string(t));
  }
  return v;
}

Segment gk15(const Integrand& f, double a, double b, int order) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = checked(f, center);
  double kronrod = fc * kWgk[7];
  double gauss = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const double sum = checked(f, center - dx) + checked(f, center + dx);
    kronrod += kWgk[j] * sum;
    if (j % 2 == 1) gauss += kWg[j / 2] * sum;
  }
  kronrod *= half;
  gauss *= half;
  const double err = std::abs(kronrod - gauss);
  return {a, b, kronrod, err, order};
}

Result adaptive(const Integrand& f, double a, double b, const Tolerance& tol) {
  Result out;
  if (a == b) return out;
  const double sign = a < b ? 1.0 : -1.0;
  if (a > b) std::swap(a, b);

  std::priority_queue<Segment, std::vector<Segment>, ByError> heap;
  int order = 0;
  Segment first = gk15(f, a, b, order++);
  double total = first.value;
  double total_err = first.error;
  heap.push(first);
  out.evaluations = 15;

  while (total_err > std::max(tol.abs, tol.rel * std::abs(total))) {
    if (static_cast<int>(heap.size()) >= tol.max_subdivisions) {
      out.converged = false;
      break;
    }
    Segment worst = heap.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (mid <= worst.a || mid >= worst.b) {
      out.converged = false;
      break;
    }
    heap.pop();
    Segment left = gk15(f, worst.a, mid, order++);
    Segment right = gk15(f, mid, worst.b, order++);
    out.evaluations += 30;
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
  }

  // Re-sum from the leaves to shed accumulated update roundoff.
  double sum = 0.0;
  double err = 0.0;
  std::vector<Segment> leaves;
  leaves.reserve(heap.size());
  while (!heap.empty()) {
    leaves.push_back(heap.top());
    heap.pop();
  }
  std::sort(leaves.begin(), leaves.end(), [](const Segment& x, const Segment& y) { return x.a < y.a; });
  for (const auto& s : leaves) {
    sum += s.value;
    err += s.error;
  }
  out.value = sign * sum;
  out.error = err;
  return out;
}

// Half-infinite pieces: [c, c + 1] directly, then t = c + e^x with
// x = y / (1 - y) on y in [0, 1). Algebraic tails t^{-p} become
// exp(-(p - 1) y / (1 - y)), which vanish to all orders at y = 1.
Result tail(const Integrand& f, double c, int direction, const Tolerance& tol) {
  if (!tail_decays(f, c, direction)) {
    fail(ErrorKind::NonIntegrableWeight,
         direction > 0 ? "integrand does not decay as t -> +inf" : "integrand does not decay as t -> -inf");
  }
  auto mapped = [&](double y) {
    if (y >= 1.0) return 0.0;
    const double one_minus = 1.0 - y;
    const double x = y / one_minus;
    if (x > 700.0) return 0.0;
    const double ex = std::exp(x);
    const double v = f(c + direction * ex);
    if (v == 0.0) return 0.0;
    return v * ex / (one_minus * one_minus);
  };
  Result near = direction > 0 ? adaptive(f, c, c + 1.0, tol) : adaptive(f, c - 1.0, c, tol);
  Result far = adaptive(mapped, 0.0, 1.0, tol);
  // The mapped piece starts at |t - c| = e^0 = 1.
  return {near.value + far.value, near.error + far.error, near.evaluations + far.evaluations,
          near.converged && far.converged};
}

Result upper_tail(const Integrand& f, double c, const Tolerance& tol) { return tail(f, c, +1, tol); }

Result lower_tail(const Integrand& f, double c, const Tolerance& tol) { return tail(f, c, -1, tol); }

Result combine(const Result& x, const Result& y) {
  return {x.value + y.value, x.error + y.error, x.evaluations + y.evaluations, x.converged && y.converged};
}

}  // namespace

bool tail_decays(const Integrand& f, double c, int direction) {
  const double near_d = 1e4;
  const double far_d = 1e8;
  const double near_v = std::abs(f(c + direction * near_d)) * near_d;
  const double far_v = std::abs(f(c + direction * far_d)) * far_d;
  if (!std::isfinite(near_v) || !std::isfinite(far_v)) return false;
  if (far_v == 0.0) return true;
  return far_v < 0.5 * near_v;
}

Result integrate(const Integrand& f, double a, double b, const Tolerance& tol, double split) {
  if (std::isnan(a) || std::isnan(b)) fail(ErrorKind::Domain, "integration limit is NaN");
  if (a == b) return {};
  if (a > b) {
    Result r = integrate(f, b, a, tol, split);
    r.value = -r.value;
    return r;
  }
  const bool lo_inf = std::isinf(a);
  const bool hi_inf = std::isinf(b);
  if (!lo_inf && !hi_inf) return adaptive(f, a, b, tol);
  if (!lo_inf) return upper_tail(f, a, tol);
  if (!hi_inf) return lower_tail(f, b, tol);
  return combine(lower_tail(f, split, tol), upper_tail(f, split, tol));
}

std::vector<Node> gauss_legendre(int n) {
  std::vector<Node> nodes(static_cast<std::size_t>(n));
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    nodes[static_cast<std::size_t>(i)] = {-x, w};
    nodes[static_cast<std::size_t>(n - 1 - i)] = {x, w};
  }
  if (n % 2 == 1) nodes[static_cast<std::size_t>(n / 2)].x = 0.0;
  return nodes;
}

std::vector<Node> gauss_legendre(int n, double a, double b) {
  auto nodes = gauss_legendre(n);
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  for (auto& node : nodes) {
    node.x = mid + half * node.x;
    node.w *= half;
  }
  return nodes;
}

double Extrapolated::spread() const { return std::abs(value - previous); }

Extrapolated richardson(std::span<const double> samples, double ratio) {
  const std::size_t n = samples.size();
  if (n == 0) fail(ErrorKind::Precondition, "richardson: no samples");
  std::vector<double> row(samples.begin(), samples.end());
  std::vector<double> diag{row.front()};
  // row[j] holds the k-th column entry for level j; overwrite in place.
  double factor = 1.0;
  for (std::size_t k = 1; k < n; ++k) {
    factor *= ratio;
    for (std::size_t j = n - 1; j >= k; --j) {
      row[j] = row[j] + (row[j] - row[j - 1]) / (factor - 1.0);
      if (j == k) break;
    }
    diag.push_back(row[k]);
  }
  Extrapolated out;
  out.value = row[n - 1];
  // Previous: same order of extrapolation one level coarser would need the
  // full table; using the last two diagonal entries mirrors the usual
  // Romberg stopping test.
  out.previous = diag.size() >= 2 ? diag[diag.size() - 2] : diag.back();
  return out;
}

}  // namespace l2ext::quad
