#pragma once

#include <functional>
#include <span>
#include <vector>

namespace l2ext::quad {

using Integrand = std::function<double(double)>;

struct Tolerance {
  double rel = 1e-13;
  double abs = 1e-300;
  int max_subdivisions = 4000;
};

struct Result {
  double value = 0.0;
  double error = 0.0;
  int evaluations = 0;
  bool converged = true;
};

/// Adaptive Gauss-Kronrod (7/15) quadrature of f over [a, b].
///
/// Either endpoint may be infinite. A half-infinite piece from c is split
/// into [c, c + 1] and the rest, mapped with t = c + e^x, x = y / (1 - y),
/// so algebraic tails stay well resolved; a doubly infinite range is split
/// at `split`. Before integrating an infinite piece the integrand's tail is
/// probed: if |t f(t)| does not decay between |t - c| = 1e4 and 1e8 the
/// integral is reported as divergent (ErrorKind::NonIntegrableWeight).
/// Non-finite integrand values raise ErrorKind::Domain.
Result integrate(const Integrand& f, double a, double b, const Tolerance& tol = {},
                 double split = 0.0);

/// Tail probe used by integrate(); exposed for callers that want the verdict
/// without integrating. `direction` is +1 for [c, inf) and -1 for (-inf, c].
bool tail_decays(const Integrand& f, double c, int direction);

struct Node {
  double x;
  double w;
};

/// n-point Gauss-Legendre rule on [-1, 1].
std::vector<Node> gauss_legendre(int n);

/// n-point Gauss-Legendre rule mapped to [a, b].
std::vector<Node> gauss_legendre(int n, double a, double b);

struct Extrapolated {
  double value = 0.0;
  double previous = 0.0;  // diagonal entry one level below `value`
  double spread() const;
};

/// Richardson extrapolation of samples T(h0 / ratio^j), j = 0..n-1, assuming
/// an error expansion in integer powers of h.
Extrapolated richardson(std::span<const double> samples, double ratio = 2.0);

}  // namespace l2ext::quad
