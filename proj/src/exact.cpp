#include "deltashock/exact.hpp"

#include <cmath>

#include "deltashock/characteristics.hpp"
#include "deltashock/critical.hpp"

namespace deltashock::exact {

namespace {

PiecewiseField assemble(const RiemannData& data, const SourceSpec& source,
                        PiecewiseField::Fn u_left, PiecewiseField::Fn u_right,
                        DeltaShockPath::Fn s, DeltaShockPath::Fn w,
                        std::optional<double> t_death) {
  // sigma = u_delta = mean of the one-sided traces, from the jump identity
  // for the flux u^2/2.
  auto u_delta = [u_left, u_right](double t) {
    return 0.5 * (u_left(t) + u_right(t));
  };
  DeltaShockPath path(std::move(s), std::move(w), u_delta, u_delta, t_death);
  PiecewiseField field(data, source, std::move(u_left), std::move(u_right),
                       std::move(path));
  if (t_death) {
    if (auto vac = characteristics::vacuum_region(field))
      return field.with_vacuum(std::move(*vac));
  }
  return field;
}

}  // namespace

PiecewiseField solve_homogeneous(const RiemannData& d) {
  const double um = d.u_minus, up = d.u_plus;
  const double sigma = 0.5 * d.u_sum();
  const double rate = 0.5 * d.rho_sum() * d.u_jump();
  return assemble(
      d, SourceSpec::homogeneous(), [um](double) { return um; },
      [up](double) { return up; }, [sigma](double t) { return sigma * t; },
      [rate](double t) { return rate * t; }, std::nullopt);
}

PiecewiseField solve_const_left(const RiemannData& d, int sign) {
  const double um = d.u_minus, up = d.u_plus, c = sign;
  const double rho = 0.5 * d.rho_sum();
  std::optional<double> death;
  if (sign < 0) death = d.u_jump();  // margin (u_- - u_+ - t)/2 hits zero
  return assemble(
      d, SourceSpec::const_left(sign),
      [um, c](double t) { return um + c * t; }, [up](double) { return up; },
      [um, up, c](double t) {
        return 0.5 * (um + up) * t + 0.25 * c * t * t;
      },
      [rho, um, up, c](double t) {
        return rho * ((um - up) * t + 0.5 * c * t * t);
      },
      death);
}

PiecewiseField solve_drag_left(const RiemannData& d, int sign) {
  const double um = d.u_minus, up = d.u_plus;
  const double rho = 0.5 * d.rho_sum();
  std::optional<double> death;
  if (sign < 0) {
    if (um > 0.0 && up > 0.0 && um > up) death = std::log(um / up);
  } else {
    if (um < 0.0) death = std::log(up / um);
  }
  if (sign < 0) {
    return assemble(
        d, SourceSpec::drag_left(sign),
        [um](double t) { return um * std::exp(-t); },
        [up](double) { return up; },
        [um, up](double t) {
          return 0.5 * (um * (1.0 - std::exp(-t)) + up * t);
        },
        [rho, um, up](double t) {
          return rho * (um * (1.0 - std::exp(-t)) - up * t);
        },
        death);
  }
  return assemble(
      d, SourceSpec::drag_left(sign),
      [um](double t) { return um * std::exp(t); },
      [up](double) { return up; },
      [um, up](double t) {
        return 0.5 * (um * (std::exp(t) - 1.0) + up * t);
      },
      [rho, um, up](double t) {
        return rho * (um * (std::exp(t) - 1.0) - up * t);
      },
      death);
}

PiecewiseField solve_mixed(const RiemannData& d) {
  const double um = d.u_minus, up = d.u_plus;
  const double rho = 0.5 * d.rho_sum();
  const auto report = critical::classify(d, SourceSpec::mixed());
  return assemble(
      d, SourceSpec::mixed(), [um](double t) { return um * std::exp(-t); },
      [up](double t) { return up + t; },
      [um, up](double t) {
        return 0.5 * (um * (1.0 - std::exp(-t)) + up * t + 0.5 * t * t);
      },
      [rho, um, up](double t) {
        return rho * (um * (1.0 - std::exp(-t)) - up * t - 0.5 * t * t);
      },
      report.death);
}

PiecewiseField solve_uniform_drag(const RiemannData& d) {
  const double um = d.u_minus, up = d.u_plus;
  const double rho = 0.5 * d.rho_sum();
  return assemble(
      d, SourceSpec::uniform_drag(),
      [um](double t) { return um * std::exp(-t); },
      [up](double t) { return up * std::exp(-t); },
      [um, up](double t) { return 0.5 * (um + up) * (1.0 - std::exp(-t)); },
      [rho, um, up](double t) { return rho * (um - up) * (1.0 - std::exp(-t)); },
      std::nullopt);
}

PiecewiseField solve(const RiemannData& data, const SourceSpec& source) {
  validate(data, source);
  switch (source.kind()) {
    case SourceKind::Homogeneous: return solve_homogeneous(data);
    case SourceKind::ConstLeft: return solve_const_left(data, source.sign());
    case SourceKind::LinearDragLeft: return solve_drag_left(data, source.sign());
    case SourceKind::MixedConstRightDragLeft: return solve_mixed(data);
    case SourceKind::UniformDrag: return solve_uniform_drag(data);
    case SourceKind::General:
      throw Error(ErrorCode::UnsupportedSource,
                  "general sources have no closed form; integrate the jump ODEs");
  }
  throw Error(ErrorCode::UnsupportedSource, "unknown source kind");
}

State eval_state(const PiecewiseField& field, double x, double t) {
  if (t < 0.0) throw std::invalid_argument("eval_state requires t >= 0");
  const auto death = field.path().t_death();
  if (death && t >= *death) {
    if (field.vacuum()) {
      const VacuumRegion& vac = *field.vacuum();
      const double xl = vac.x_left(t), xr = vac.x_right(t);
      if (x > xl && x < xr) return Vacuum{};
      if (x <= xl) {
        auto [rho, u] = field.left_state(x, t);
        return Smooth{rho, u};
      }
      auto [rho, u] = field.right_state(x, t);
      return Smooth{rho, u};
    }
    // Dead front without a constructed wedge: fall through with the front
    // frozen at its death position.
  }
  const double s = field.path().s(std::min(t, death.value_or(t)));
  if (x == s && (!death || t < *death))
    return Front{field.path().w(t), field.path().u_delta(t)};
  if (x < s) {
    auto [rho, u] = field.left_state(x, t);
    return Smooth{rho, u};
  }
  auto [rho, u] = field.right_state(x, t);
  return Smooth{rho, u};
}

}  // namespace deltashock::exact
