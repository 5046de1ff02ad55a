#include "deltashock/numerics.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

#include "deltashock/model.hpp"

namespace deltashock::num {

std::optional<Bracket> bracket_sign_change(const Fn1& f, double t0, double h0,
                                           double horizon) {
  const double f0 = f(t0);
  if (f0 == 0.0) return Bracket{t0, t0};
  double lo = t0;
  double flo = f0;
  double h = h0;
  while (lo < horizon) {
    double hi = std::min(lo + h, horizon);
    double fhi = f(hi);
    if (fhi == 0.0 || (flo > 0.0) != (fhi > 0.0)) return Bracket{lo, hi};
    lo = hi;
    flo = fhi;
    h *= 2.0;
  }
  return std::nullopt;
}

double bisect(const Fn1& f, double lo, double hi, double tol, int max_iter) {
  double flo = f(lo);
  if (flo == 0.0) return lo;
  double fhi = f(hi);
  if (fhi == 0.0) return hi;
  if ((flo > 0.0) == (fhi > 0.0))
    throw std::invalid_argument("bisect: no sign change in bracket");
  for (int i = 0; i < max_iter && (hi - lo) > tol; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double newton_polish(const Fn1& f, const Fn1& df, double x0, double lo,
                     double hi, int steps) {
  double x = x0;
  for (int i = 0; i < steps; ++i) {
    const double d = df(x);
    if (!std::isfinite(d) || std::abs(d) < 1e-300) break;
    const double next = x - f(x) / d;
    if (!std::isfinite(next) || next < lo || next > hi) break;
    x = next;
  }
  return x;
}

std::optional<double> first_root(const Fn1& f, double t0, double h0,
                                 double horizon, const Fn1& df, double tol) {
  auto bracket = bracket_sign_change(f, t0, h0, horizon);
  if (!bracket) return std::nullopt;
  if (bracket->lo == bracket->hi) return bracket->lo;
  double root = bisect(f, bracket->lo, bracket->hi, tol);
  if (df) root = newton_polish(f, df, root, bracket->lo, bracket->hi);
  return root;
}

double golden_min(const Fn1& f, double lo, double hi, double tol) {
  const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = lo, b = hi;
  double x1 = b - phi * (b - a);
  double x2 = a + phi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  while (b - a > tol) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - phi * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + phi * (b - a);
      f2 = f(x2);
    }
  }
  return 0.5 * (a + b);
}

const GaussRule& gauss_legendre(int n) {
  static std::map<int, GaussRule> cache;
  static std::mutex mutex;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;

  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    // Chebyshev initial guess, Newton on P_n via the three-term recurrence.
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
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
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  return cache.emplace(n, std::move(rule)).first->second;
}

double gl_integrate(const Fn1& f, double a, double b, int n) {
  const GaussRule& rule = gauss_legendre(n);
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double sum = 0.0;
  for (int i = 0; i < n; ++i)
    sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
  return half * sum;
}

namespace {

double adapt(const Fn1& f, double a, double b, double tol, int depth,
             int max_depth, double whole) {
  const double mid = 0.5 * (a + b);
  const double left = gl_integrate(f, a, mid, 15);
  const double right = gl_integrate(f, mid, b, 15);
  const double refined = left + right;
  if (std::abs(refined - whole) <= tol) return refined;
  if (depth >= max_depth)
    throw Error(ErrorCode::QuadratureFailure,
                "adaptive quadrature exceeded max depth without converging");
  return adapt(f, a, mid, 0.5 * tol, depth + 1, max_depth, left) +
         adapt(f, mid, b, 0.5 * tol, depth + 1, max_depth, right);
}

}  // namespace

double adaptive_integrate(const Fn1& f, double a, double b, double abs_tol,
                          int max_depth) {
  if (a == b) return 0.0;
  return adapt(f, a, b, abs_tol, 0, max_depth, gl_integrate(f, a, b, 15));
}

}  // namespace deltashock::num
