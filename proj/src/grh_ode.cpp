#include "deltashock/grh_ode.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace deltashock::grh {

namespace {

using Vec = std::array<double, 4>;  // (s, w, u_l, u_r)

Vec operator+(const Vec& a, const Vec& b) {
  return {a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]};
}
Vec operator*(double c, const Vec& a) {
  return {c * a[0], c * a[1], c * a[2], c * a[3]};
}

struct System {
  const RiemannData& data;
  const SourceSpec& source;

  Vec rhs(double t, const Vec& y) const {
    const double u_l = y[2], u_r = y[3];
    const double sigma = 0.5 * (u_l + u_r);
    return {sigma,
            sigma * (data.rho_plus - data.rho_minus) -
                (data.rho_plus * u_r - data.rho_minus * u_l),
            source.g(t, u_l), source.f(t, u_r)};
  }
};

// Dormand-Prince 5(4) coefficients.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                 a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                 b5 = -2187.0 / 6784, b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

struct StepOut {
  Vec y;        // 5th-order solution
  Vec err;      // embedded error estimate
  Vec f_end;    // derivative at the step end (FSAL stage)
};

StepOut dp_step(const System& sys, double t, const Vec& y, const Vec& f0,
                double h) {
  const Vec k1 = f0;
  const Vec k2 = sys.rhs(t + c2 * h, y + h * (a21 * k1));
  const Vec k3 = sys.rhs(t + c3 * h, y + h * (a31 * k1 + a32 * k2));
  const Vec k4 = sys.rhs(t + c4 * h, y + h * (a41 * k1 + a42 * k2 + a43 * k3));
  const Vec k5 = sys.rhs(t + c5 * h,
                         y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
  const Vec k6 = sys.rhs(
      t + h, y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
  StepOut out;
  out.y = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
  const Vec k7 = sys.rhs(t + h, out.y);
  out.err = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
  out.f_end = k7;
  return out;
}

struct Segment {
  double t0, t1;
  Vec y0, y1, f0, f1;
};

Vec hermite(const Segment& seg, double t) {
  const double h = seg.t1 - seg.t0;
  if (h == 0.0) return seg.y0;
  const double th = (t - seg.t0) / h;
  const double h00 = (1 + 2 * th) * (1 - th) * (1 - th);
  const double h10 = th * (1 - th) * (1 - th);
  const double h01 = th * th * (3 - 2 * th);
  const double h11 = th * th * (th - 1);
  Vec out;
  for (int i = 0; i < 4; ++i)
    out[i] = h00 * seg.y0[i] + h10 * h * seg.f0[i] + h01 * seg.y1[i] +
             h11 * h * seg.f1[i];
  return out;
}

constexpr double kMinStep = 1e-14;
constexpr double kEventTol = 1e-11;

}  // namespace

struct Result::Dense {
  std::vector<Segment> segments;

  Vec eval(double t) const {
    if (segments.empty()) return Vec{};
    if (t <= segments.front().t0) return segments.front().y0;
    if (t >= segments.back().t1) return segments.back().y1;
    auto it = std::upper_bound(
        segments.begin(), segments.end(), t,
        [](double value, const Segment& seg) { return value < seg.t1; });
    return hermite(*it, t);
  }
};

double jump_residual(double u_l, double u_r, double sigma) {
  return sigma * (u_r - u_l) - 0.5 * (u_r * u_r - u_l * u_l);
}

GrhState Result::eval(double t) const {
  const Vec y = dense->eval(t);
  return GrhState{t, y[0], y[1], y[2], y[3]};
}

namespace {

Result assemble(std::shared_ptr<Result::Dense> dense, StopReason reason,
                std::optional<double> death, std::vector<GrhState> steps,
                double max_residual) {
  auto shared = std::shared_ptr<const Result::Dense>(std::move(dense));
  auto get = [shared](double t, int i) { return shared->eval(t)[i]; };
  std::vector<PathSample> samples;
  samples.reserve(steps.size());
  for (const auto& st : steps)
    samples.push_back({st.t, st.s, st.w, 0.5 * (st.u_l + st.u_r)});
  DeltaShockPath path(
      [get](double t) { return get(t, 0); },
      [get](double t) { return get(t, 1); },
      [shared](double t) {
        const Vec y = shared->eval(t);
        return 0.5 * (y[2] + y[3]);
      },
      [shared](double t) {
        const Vec y = shared->eval(t);
        return 0.5 * (y[2] + y[3]);
      },
      death, std::move(samples));
  Result res{std::move(path), reason, death, std::move(steps), max_residual,
             shared};
  return res;
}

// Entropy event inside an accepted step: bisection on the Hermite dense
// output to kEventTol, then a re-stepped bisection from the step start so the
// localized time does not inherit the interpolant's error.
double localize_event(const System& sys, const Segment& seg) {
  auto margin = [&](double t) { return hermite(seg, t)[2] - hermite(seg, t)[3]; };
  double lo = seg.t0, hi = seg.t1;
  // Bisect the interpolant when it sees the crossing; if it misses the sign
  // change recorded at the endpoint, the full step stays as the bracket for
  // the re-stepped bisection below.
  if (margin(hi) <= 0.0) {
    while (hi - lo > kEventTol) {
      const double mid = 0.5 * (lo + hi);
      (margin(mid) > 0.0 ? lo : hi) = mid;
    }
  }
  // Polish: evaluate the margin by a single fifth-order step from t0.
  auto stepped_margin = [&](double t) {
    if (t <= seg.t0) return seg.y0[2] - seg.y0[3];
    const StepOut out = dp_step(sys, seg.t0, seg.y0, seg.f0, t - seg.t0);
    return out.y[2] - out.y[3];
  };
  double plo = seg.t0, phi = seg.t1;
  if (stepped_margin(phi) <= 0.0) {
    while (phi - plo > kEventTol) {
      const double mid = 0.5 * (plo + phi);
      (stepped_margin(mid) > 0.0 ? plo : phi) = mid;
    }
    return 0.5 * (plo + phi);
  }
  return 0.5 * (lo + hi);
}

Result run(const RiemannData& data, const SourceSpec& source, double t_end,
           double tol, bool adaptive, double fixed_h) {
  validate(data, source);
  const System sys{data, source};

  Vec y{0.0, 0.0, data.u_minus, data.u_plus};
  double t = 0.0;
  Vec f = sys.rhs(t, y);

  auto dense = std::make_shared<Result::Dense>();
  std::vector<GrhState> steps;
  steps.push_back({t, y[0], y[1], y[2], y[3]});
  double max_residual = 0.0;

  double h = adaptive ? std::min({1e-3, 0.1 * std::max(t_end, 1e-12)}) : fixed_h;
  std::optional<double> death;

  const double t_edge = kMinStep * std::max(1.0, std::abs(t_end));
  while (t < t_end - t_edge) {
    h = std::min(h, t_end - t);
    if (h < kMinStep)
      throw Error(ErrorCode::StepUnderflow,
                  "step size underflow in GRH integration");

    const StepOut out = dp_step(sys, t, y, f, h);

    if (adaptive) {
      double err = 0.0;
      for (int i = 0; i < 4; ++i) {
        const double sc =
            tol + tol * std::max(std::abs(y[i]), std::abs(out.y[i]));
        const double r = out.err[i] / sc;
        err += r * r;
      }
      err = std::sqrt(err / 4.0);
      if (err > 1.0) {
        h *= std::max(0.2, 0.9 * std::pow(err, -0.2));
        continue;
      }
      const double grow = err > 0.0 ? 0.9 * std::pow(err, -0.2) : 5.0;
      const double h_next = h * std::min(5.0, std::max(0.2, grow));

      Segment seg{t, t + h, y, out.y, f, out.f_end};
      const double margin_end = out.y[2] - out.y[3];
      if (margin_end <= 0.0) {
        const double t_ev = localize_event(sys, seg);
        const StepOut ev = dp_step(sys, t, y, f, std::max(t_ev - t, kMinStep));
        seg.t1 = t_ev;
        seg.y1 = ev.y;
        seg.f1 = ev.f_end;
        dense->segments.push_back(seg);
        steps.push_back({t_ev, ev.y[0], ev.y[1], ev.y[2], ev.y[3]});
        death = t_ev;
        break;
      }

      dense->segments.push_back(seg);
      t += h;
      y = out.y;
      f = out.f_end;
      h = h_next;
    } else {
      Segment seg{t, t + h, y, out.y, f, out.f_end};
      dense->segments.push_back(seg);
      t += h;
      y = out.y;
      f = out.f_end;
    }

    max_residual = std::max(
        max_residual, std::abs(jump_residual(y[2], y[3], 0.5 * (y[2] + y[3]))));
    steps.push_back({t, y[0], y[1], y[2], y[3]});
    if (steps.size() > 5'000'000)
      throw Error(ErrorCode::StepUnderflow, "GRH integration stalled");
  }

  const StopReason reason =
      death ? StopReason::EntropyDeath : StopReason::Horizon;
  return assemble(std::move(dense), reason, death, std::move(steps),
                  max_residual);
}

}  // namespace

Result integrate(const RiemannData& data, const SourceSpec& source,
                 double t_end, double tol) {
  if (!(tol >= 1e-14 && tol <= 1e-3))
    throw std::invalid_argument("grh::integrate tol must be in [1e-14, 1e-3]");
  if (!(t_end > 0.0)) throw std::invalid_argument("t_end must be positive");
  return run(data, source, t_end, tol, true, 0.0);
}

Result integrate_fixed(const RiemannData& data, const SourceSpec& source,
                       double t_end, double h) {
  if (!(h > 0.0)) throw std::invalid_argument("step size must be positive");
  return run(data, source, t_end, 0.0, false, h);
}

PiecewiseField to_field(const Result& result, const RiemannData& data,
                        const SourceSpec& source) {
  auto dense = result.dense;
  return PiecewiseField(
      data, source,
      [dense](double t) { return dense->eval(t)[2]; },
      [dense](double t) { return dense->eval(t)[3]; }, result.path);
}

}  // namespace deltashock::grh
