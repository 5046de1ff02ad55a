#pragma once

#include <functional>
#include <optional>
#include <vector>

namespace deltashock::num {

using Fn1 = std::function<double(double)>;

struct Bracket {
  double lo, hi;
};

// Expands [t0, t0+h0], doubling the width, until f changes sign or the
// horizon is passed. f(t0) fixes the reference sign.
std::optional<Bracket> bracket_sign_change(const Fn1& f, double t0, double h0,
                                           double horizon);

// Bisection on a sign-changing bracket; returns the midpoint of the final
// interval of width <= tol.
double bisect(const Fn1& f, double lo, double hi, double tol = 1e-12,
              int max_iter = 200);

// A few guarded Newton steps from x0; falls back to x0 whenever an iterate
// leaves [lo, hi] or the derivative degenerates.
double newton_polish(const Fn1& f, const Fn1& df, double x0, double lo,
                     double hi, int steps = 3);

// Bracketed root: doubling scan, bisection to tol, Newton polish when a
// derivative is supplied. Returns nullopt if no sign change before horizon.
std::optional<double> first_root(const Fn1& f, double t0, double h0,
                                 double horizon, const Fn1& df = nullptr,
                                 double tol = 1e-12);

// Golden-section minimizer for unimodal f on [lo, hi]; tolerance in the
// argument.
double golden_min(const Fn1& f, double lo, double hi, double tol = 1e-10);

// Gauss-Legendre rule of order n on [-1, 1]; nodes/weights cached per n.
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
const GaussRule& gauss_legendre(int n);

double gl_integrate(const Fn1& f, double a, double b, int n);

// Adaptive bisection built on 15-point Gauss panels. Throws
// Error(QuadratureFailure) when max_depth subdivisions cannot reach tol.
double adaptive_integrate(const Fn1& f, double a, double b, double abs_tol,
                          int max_depth = 20);

}  // namespace deltashock::num
