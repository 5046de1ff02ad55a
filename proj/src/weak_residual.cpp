#include "deltashock/weak_residual.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "deltashock/numerics.hpp"

namespace deltashock::weak {

TestFunction::TestFunction(double cx_, double ct_, double rx_, double rt_)
    : cx(cx_), ct(ct_), rx(rx_), rt(rt_) {
  if (!(rx > 0.0) || !(rt > 0.0))
    throw std::invalid_argument("test function radii must be positive");
  if (!(ct - rt > 0.0))
    throw std::invalid_argument("test function support must lie in t > 0");
}

namespace {

inline double sq(double v) { return v * v; }

}  // namespace

double TestFunction::phi(double x, double t) const {
  const double r2 = sq((x - cx) / rx) + sq((t - ct) / rt);
  if (r2 >= 1.0) return 0.0;
  return std::exp(-1.0 / (1.0 - r2));
}

double TestFunction::phi_t(double x, double t) const {
  const double r2 = sq((x - cx) / rx) + sq((t - ct) / rt);
  if (r2 >= 1.0) return 0.0;
  const double v = 1.0 - r2;
  return std::exp(-1.0 / v) * (-1.0 / (v * v)) * 2.0 * (t - ct) / (rt * rt);
}

double TestFunction::phi_x(double x, double t) const {
  const double r2 = sq((x - cx) / rx) + sq((t - ct) / rt);
  if (r2 >= 1.0) return 0.0;
  const double v = 1.0 - r2;
  return std::exp(-1.0 / v) * (-1.0 / (v * v)) * 2.0 * (x - cx) / (rx * rx);
}

double TestFunction::slice_halfwidth(double t) const {
  const double a = 1.0 - sq((t - ct) / rt);
  if (a <= 0.0) return 0.0;
  return rx * std::sqrt(a);
}

double TestFunction::sup_norm() const { return std::exp(-1.0); }

double TestFunction::area() const { return M_PI * rx * rt; }

namespace {

// Generic test-function view: evaluators plus the support geometry the
// quadrature needs (time window, per-slice x-interval hull).
struct PhiView {
  std::function<double(double, double)> phi, phi_t, phi_x;
  double t_lo = 0.0, t_hi = 0.0;
  std::function<std::pair<double, double>(double)> x_range;
  double norm_scale = 0.0;  // sum |a_i| * sup * area, sets the default tol
};

PhiView make_view(const TestFunction& tf) {
  PhiView v;
  v.phi = [tf](double x, double t) { return tf.phi(x, t); };
  v.phi_t = [tf](double x, double t) { return tf.phi_t(x, t); };
  v.phi_x = [tf](double x, double t) { return tf.phi_x(x, t); };
  v.t_lo = tf.ct - tf.rt;
  v.t_hi = tf.ct + tf.rt;
  v.x_range = [tf](double t) {
    const double half = tf.slice_halfwidth(t);
    return std::pair<double, double>{tf.cx - half, tf.cx + half};
  };
  v.norm_scale = tf.sup_norm() * tf.area();
  return v;
}

PhiView make_view(const WeightedBumps& bumps) {
  if (bumps.empty()) throw std::invalid_argument("empty bump combination");
  PhiView v;
  auto terms = bumps;
  v.phi = [terms](double x, double t) {
    double sum = 0.0;
    for (const auto& [a, tf] : terms) sum += a * tf.phi(x, t);
    return sum;
  };
  v.phi_t = [terms](double x, double t) {
    double sum = 0.0;
    for (const auto& [a, tf] : terms) sum += a * tf.phi_t(x, t);
    return sum;
  };
  v.phi_x = [terms](double x, double t) {
    double sum = 0.0;
    for (const auto& [a, tf] : terms) sum += a * tf.phi_x(x, t);
    return sum;
  };
  v.t_lo = terms.front().second.ct - terms.front().second.rt;
  v.t_hi = terms.front().second.ct + terms.front().second.rt;
  for (const auto& [a, tf] : terms) {
    v.t_lo = std::min(v.t_lo, tf.ct - tf.rt);
    v.t_hi = std::max(v.t_hi, tf.ct + tf.rt);
    v.norm_scale += std::abs(a) * tf.sup_norm() * tf.area();
  }
  v.x_range = [terms](double t) {
    double lo = 0.0, hi = -1.0;
    bool any = false;
    for (const auto& [a, tf] : terms) {
      const double half = tf.slice_halfwidth(t);
      if (half == 0.0) continue;
      if (!any) {
        lo = tf.cx - half;
        hi = tf.cx + half;
        any = true;
      } else {
        lo = std::min(lo, tf.cx - half);
        hi = std::max(hi, tf.cx + half);
      }
    }
    return std::pair<double, double>{lo, hi};
  };
  return v;
}

double default_tol(const PhiView& view, const QuadratureOptions& opt) {
  if (opt.abs_tol > 0.0) return opt.abs_tol;
  return 1e-8 * view.norm_scale;
}

void check_validity(const PiecewiseField& field, const PhiView& view) {
  const auto death = field.path().t_death();
  if (death && view.t_hi > *death + 1e-12)
    throw std::invalid_argument(
        "test function support exceeds the field's validity interval");
  if (!(view.t_lo > 0.0))
    throw std::invalid_argument("test function support must lie in t > 0");
}

// Composite rule on one smooth piece: two Gauss panels, since the mollifier
// is not analytic at its support boundary and a single panel stalls near
// 1e-7 relative error.
double smooth_piece(const num::Fn1& integrand, double a, double b, int nodes) {
  const double mid = 0.5 * (a + b);
  return num::gl_integrate(integrand, a, mid, nodes) +
         num::gl_integrate(integrand, mid, b, nodes);
}

// Integral over the support slice at time t, split at the front.
double slice_integral(const num::Fn1& integrand, double xlo, double xhi,
                      double split, int nodes) {
  if (xhi <= xlo) return 0.0;
  if (split > xlo && split < xhi)
    return smooth_piece(integrand, xlo, split, nodes) +
           smooth_piece(integrand, split, xhi, nodes);
  return smooth_piece(integrand, xlo, xhi, nodes);
}

double integrate_time(const num::Fn1& slice, const PhiView& view,
                      const QuadratureOptions& opt) {
  if (opt.fixed_slices > 0) {
    double sum = 0.0;
    const double h = (view.t_hi - view.t_lo) / opt.fixed_slices;
    for (int i = 0; i < opt.fixed_slices; ++i)
      sum += num::gl_integrate(slice, view.t_lo + i * h,
                               view.t_lo + (i + 1) * h, 15);
    return sum;
  }
  return num::adaptive_integrate(slice, view.t_lo, view.t_hi,
                                 default_tol(view, opt), opt.max_depth);
}

double residual_velocity_impl(const PiecewiseField& field,
                              const SourceSpec& source, const PhiView& view,
                              const QuadratureOptions& opt) {
  check_validity(field, view);
  auto slice = [&](double t) {
    const auto [xlo, xhi] = view.x_range(t);
    if (xhi <= xlo) return 0.0;
    const double s = field.path().s(t);
    const double ul = field.u_left(t), ur = field.u_right(t);
    auto integrand = [&](double x) {
      const double u = x < s ? ul : ur;
      const double src = x < s ? source.g(t, u) : source.f(t, u);
      return -(u * view.phi_t(x, t) + 0.5 * u * u * view.phi_x(x, t) +
               src * view.phi(x, t));
    };
    return slice_integral(integrand, xlo, xhi, s, opt.nodes_x);
  };
  return integrate_time(slice, view, opt);
}

double front_mass_term_impl(const PiecewiseField& field, const PhiView& view,
                            const QuadratureOptions& opt) {
  const DeltaShockPath& path = field.path();
  auto line = [&](double t) {
    const double s = path.s(t);
    return path.w(t) * (view.phi_t(s, t) + path.u_delta(t) * view.phi_x(s, t));
  };
  return integrate_time(line, view, opt);
}

double residual_mass_impl(const PiecewiseField& field, const PhiView& view,
                          const QuadratureOptions& opt) {
  check_validity(field, view);
  const double rho_l = field.data().rho_minus;
  const double rho_r = field.data().rho_plus;
  auto slice = [&](double t) {
    const auto [xlo, xhi] = view.x_range(t);
    if (xhi <= xlo) return 0.0;
    const double s = field.path().s(t);
    const double ul = field.u_left(t), ur = field.u_right(t);
    auto integrand = [&](double x) {
      const double rho = x < s ? rho_l : rho_r;
      const double u = x < s ? ul : ur;
      return -(rho * view.phi_t(x, t) + rho * u * view.phi_x(x, t));
    };
    return slice_integral(integrand, xlo, xhi, s, opt.nodes_x);
  };
  return integrate_time(slice, view, opt) - front_mass_term_impl(field, view, opt);
}

}  // namespace

double residual_velocity(const PiecewiseField& field, const SourceSpec& source,
                         const TestFunction& phi, const QuadratureOptions& opt) {
  return residual_velocity_impl(field, source, make_view(phi), opt);
}

double residual_velocity(const PiecewiseField& field, const SourceSpec& source,
                         const WeightedBumps& phi, const QuadratureOptions& opt) {
  return residual_velocity_impl(field, source, make_view(phi), opt);
}

double residual_mass(const PiecewiseField& field, const TestFunction& phi,
                     const QuadratureOptions& opt) {
  return residual_mass_impl(field, make_view(phi), opt);
}

double residual_mass(const PiecewiseField& field, const WeightedBumps& phi,
                     const QuadratureOptions& opt) {
  return residual_mass_impl(field, make_view(phi), opt);
}

double front_mass_term(const PiecewiseField& field, const TestFunction& phi,
                       const QuadratureOptions& opt) {
  return front_mass_term_impl(field, make_view(phi), opt);
}

PiecewiseField perturb_front(const PiecewiseField& field, double a) {
  const DeltaShockPath& p = field.path();
  auto s = [p, a](double t) { return p.s(t) + a * t; };
  auto w = [p](double t) { return p.w(t); };
  auto u_delta = [p](double t) { return p.u_delta(t); };
  auto sigma = [p, a](double t) { return p.sigma(t) + a; };
  return field.with_path(
      DeltaShockPath::unchecked(s, w, u_delta, sigma, p.t_death()));
}

std::vector<TestFunction> default_battery(const PiecewiseField& field,
                                          double t_horizon) {
  const auto death = field.path().t_death();
  const double T = death ? std::min(*death, t_horizon) : t_horizon;
  const DeltaShockPath& path = field.path();

  const double speed = std::max({1.0, std::abs(field.data().u_minus),
                                 std::abs(field.data().u_plus)});
  auto bump_on_front = [&](double frac, double rt_frac) {
    const double tc = frac * T;
    const double rt = rt_frac * T;
    const double rx = std::max(0.35, 0.6 * rt * speed);
    return TestFunction(path.s(tc), tc, rx, rt);
  };

  std::vector<TestFunction> bumps;
  bumps.push_back(bump_on_front(0.5, 0.2));
  bumps.push_back(bump_on_front(0.3, 0.15));
  bumps.push_back(bump_on_front(0.7, 0.15));

  // One bump per smooth region, offset far enough that the front stays out
  // of the support over the bump's whole time window.
  const TestFunction& mid = bumps.front();
  double s_min = path.s(mid.ct), s_max = s_min;
  for (int i = 0; i <= 32; ++i) {
    const double t = mid.ct - mid.rt + 2.0 * mid.rt * i / 32.0;
    const double s = path.s(t);
    s_min = std::min(s_min, s);
    s_max = std::max(s_max, s);
  }
  const double margin = 1.5 * mid.rx + 0.1;
  bumps.emplace_back(s_min - margin - mid.rx, mid.ct, mid.rx, mid.rt);
  bumps.emplace_back(s_max + margin + mid.rx, mid.ct, mid.rx, mid.rt);
  return bumps;
}

Report verify(const PiecewiseField& field, const SourceSpec& source,
              const std::vector<TestFunction>& bumps, double threshold_rel) {
  Report report;
  report.threshold_rel = threshold_rel;
  report.pass = true;
  for (const TestFunction& phi : bumps) {
    BumpResult r{phi};
    r.threshold = threshold_rel * phi.sup_norm() * phi.area();
    r.r_velocity = residual_velocity(field, source, phi);
    r.r_mass = residual_mass(field, phi);
    r.pass = std::abs(r.r_velocity) <= r.threshold &&
             std::abs(r.r_mass) <= r.threshold;
    report.pass = report.pass && r.pass;
    report.bumps.push_back(std::move(r));
  }
  return report;
}

}  // namespace deltashock::weak
