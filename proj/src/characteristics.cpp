#include "deltashock/characteristics.hpp"

#include <algorithm>
#include <cmath>

#include "deltashock/numerics.hpp"

namespace deltashock::characteristics {

double side_displacement(const SourceSpec& source, const RiemannData& data,
                         Side side, double t) {
  const double u0 = side == Side::Left ? data.u_minus : data.u_plus;
  switch (source.kind()) {
    case SourceKind::Homogeneous:
      return u0 * t;
    case SourceKind::ConstLeft:
      if (side == Side::Right) return u0 * t;
      return u0 * t + 0.5 * source.sign() * t * t;
    case SourceKind::LinearDragLeft:
      if (side == Side::Right) return u0 * t;
      return source.sign() < 0 ? u0 * (1.0 - std::exp(-t))
                               : u0 * (std::exp(t) - 1.0);
    case SourceKind::MixedConstRightDragLeft:
      return side == Side::Left ? u0 * (1.0 - std::exp(-t))
                                : u0 * t + 0.5 * t * t;
    case SourceKind::UniformDrag:
      return u0 * (1.0 - std::exp(-t));
    case SourceKind::General:
      throw Error(ErrorCode::UnsupportedSource,
                  "no closed-form characteristics for general sources");
  }
  return 0.0;
}

CharCurve characteristic(const SourceSpec& source, const RiemannData& data,
                         double x0) {
  if (x0 == 0.0)
    throw std::invalid_argument("characteristic seed must be off the front");
  if (source.kind() == SourceKind::General)
    throw Error(ErrorCode::UnsupportedSource,
                "no closed-form characteristics for general sources");
  CharCurve curve;
  curve.x0 = x0;
  curve.side = x0 < 0.0 ? Side::Left : Side::Right;
  const Side side = curve.side;
  curve.trace = [source, data, side, x0](double t) {
    return x0 + side_displacement(source, data, side, t);
  };
  return curve;
}

CharCurve clip_to_front(CharCurve curve, const DeltaShockPath& path,
                        double horizon) {
  const double t_hi = path.t_death() ? std::min(*path.t_death(), horizon)
                                     : horizon;
  auto gap = [&](double t) { return curve.trace(t) - path.s(t); };

  curve.clipped_at.reset();
  auto bracket = num::bracket_sign_change(gap, 0.0, 1e-3, t_hi);
  if (bracket) {
    if (bracket->lo == bracket->hi) {
      curve.clipped_at = bracket->lo;
    } else {
      curve.clipped_at = num::bisect(gap, bracket->lo, bracket->hi, 1e-12);
    }
    return curve;
  }

  // Tangential contact: the gap never changes sign, so look for a near-zero
  // minimum of |gap| instead.
  auto abs_gap = [&](double t) { return std::abs(gap(t)); };
  const double t_min = num::golden_min(abs_gap, 0.0, t_hi, 1e-10);
  const double scale = std::max(1.0, std::abs(curve.x0));
  if (abs_gap(t_min) <= 1e-7 * scale) curve.clipped_at = t_min;
  return curve;
}

std::optional<VacuumRegion> vacuum_region(const PiecewiseField& field) {
  const auto td = field.path().t_death();
  if (!td) return std::nullopt;
  const double t_star = *td;
  const double s_star = field.path().s(t_star);
  const SourceSpec source = field.source();
  const RiemannData data = field.data();
  auto left = [source, data, t_star, s_star](double t) {
    return s_star + side_displacement(source, data, Side::Left, t) -
           side_displacement(source, data, Side::Left, t_star);
  };
  auto right = [source, data, t_star, s_star](double t) {
    return s_star + side_displacement(source, data, Side::Right, t) -
           side_displacement(source, data, Side::Right, t_star);
  };
  return VacuumRegion(t_star, left, right);
}

VacuumRegion vacuum_region_checked(const PiecewiseField& field) {
  auto region = vacuum_region(field);
  if (!region)
    throw Error(ErrorCode::NoDeath, "field has no death time, no vacuum");
  return *region;
}

namespace {

void append_samples(Polyline& line, const std::function<double(double)>& x_of_t,
                    double t_begin, double t_end, double dt) {
  for (double t = t_begin; t < t_end; t += dt)
    line.points.push_back({t, x_of_t(t)});
  line.points.push_back({t_end, x_of_t(t_end)});
}

}  // namespace

std::vector<Polyline> sample_fan(const PiecewiseField& field, int n_curves,
                                 double t_max, double dt) {
  if (n_curves < 1) throw std::invalid_argument("n_curves must be >= 1");
  if (!(dt > 0.0)) throw std::invalid_argument("dt must be positive");

  const RiemannData& d = field.data();
  const SourceSpec& source = field.source();
  const DeltaShockPath& path = field.path();
  const double t_front_end =
      path.t_death() ? std::min(*path.t_death(), t_max) : t_max;

  double span = 1.0;
  span = std::max(span, std::abs(side_displacement(source, d, Side::Left, t_max)));
  span = std::max(span, std::abs(side_displacement(source, d, Side::Right, t_max)));
  for (double t = 0.0; t <= t_front_end; t += dt)
    span = std::max(span, std::abs(path.s(t)));
  span *= 1.2;

  std::vector<Polyline> lines;
  int id = 0;
  for (int side = 0; side < 2; ++side) {
    const double sgn = side == 0 ? -1.0 : 1.0;
    for (int i = 0; i < n_curves; ++i) {
      const double frac =
          n_curves == 1 ? 1.0
                        : std::pow(20.0, -double(n_curves - 1 - i) /
                                             double(n_curves - 1));
      CharCurve curve = characteristic(source, d, sgn * span * frac);
      curve = clip_to_front(std::move(curve), path, t_max);
      Polyline line;
      line.id = id++;
      line.tag = side == 0 ? "left" : "right";
      const double t_end =
          curve.clipped_at ? std::min(*curve.clipped_at, t_max) : t_max;
      append_samples(line, curve.trace, 0.0, t_end, dt);
      lines.push_back(std::move(line));
    }
  }

  Polyline front;
  front.id = id++;
  front.tag = "front";
  append_samples(front, [&](double t) { return path.s(t); }, 0.0, t_front_end,
                 dt);
  lines.push_back(std::move(front));

  if (field.vacuum() && field.vacuum()->t_start() < t_max) {
    const VacuumRegion& vac = *field.vacuum();
    Polyline vl, vr;
    vl.id = id++;
    vl.tag = "vac_left";
    append_samples(vl, [&](double t) { return vac.x_left(t); }, vac.t_start(),
                   t_max, dt);
    vr.id = id++;
    vr.tag = "vac_right";
    append_samples(vr, [&](double t) { return vac.x_right(t); }, vac.t_start(),
                   t_max, dt);
    lines.push_back(std::move(vl));
    lines.push_back(std::move(vr));
  }
  return lines;
}

}  // namespace deltashock::characteristics
