#include "deltashock/critical.hpp"

#include <cfloat>
#include <cmath>

#include "deltashock/grh_ode.hpp"
#include "deltashock/numerics.hpp"

namespace deltashock::critical {

const char* to_string(Panel panel) {
  switch (panel) {
    case Panel::Hom: return "Hom";
    case Panel::Fig1a: return "Fig1a";
    case Panel::Fig1b: return "Fig1b";
    case Panel::Fig1c: return "Fig1c";
    case Panel::Fig1d: return "Fig1d";
    case Panel::Fig2a: return "Fig2a";
    case Panel::Fig2b: return "Fig2b";
    case Panel::Fig2c: return "Fig2c";
    case Panel::Fig2d: return "Fig2d";
    case Panel::Fig2e: return "Fig2e";
    case Panel::Fig2f: return "Fig2f";
    case Panel::Fig3a: return "Fig3a";
    case Panel::Fig3b: return "Fig3b";
    case Panel::Fig3c: return "Fig3c";
    case Panel::Fig3d: return "Fig3d";
    case Panel::Fig3e: return "Fig3e";
    case Panel::Fig3f: return "Fig3f";
    case Panel::Fig4a: return "Fig4a";
    case Panel::Fig4b: return "Fig4b";
    case Panel::Fig5: return "Fig5";
    case Panel::MirrorFig1: return "MirrorFig1";
    case Panel::MirrorFig2: return "MirrorFig2";
    case Panel::UniformDrag: return "UniformDrag";
    case Panel::General: return "General";
  }
  return "Unknown";
}

std::function<double(double)> p_fn(const RiemannData& data) {
  const double um = data.u_minus, up = data.u_plus;
  return [um, up](double t) { return um * std::exp(-t) - up; };
}

std::function<double(double)> q_fn(const RiemannData& data) {
  const double um = data.u_minus, up = data.u_plus;
  return [um, up](double t) { return um * std::exp(-t) - (up + t); };
}

namespace {

void classify_const_left(const RiemannData& d, int sign, CaseReport& r) {
  const double um = d.u_minus, up = d.u_plus, sum = d.u_sum();
  if (sign > 0) {
    // g = 1: margins grow like (u_- - u_+ + t)/2, never a death.
    if (sum >= 0.0) {
      r.panel = up > 0.0 ? Panel::Fig1a : Panel::Fig1b;
    } else {
      r.panel = um >= 0.0 ? Panel::Fig1c : Panel::Fig1d;
      r.times["t1"] = -sum;        // sigma(t1) = 0
      r.times["t2"] = -2.0 * sum;  // s(t2) = 0 again
      if (um < 0.0) r.times["t1*"] = -um;  // vertex of the left parabolas
    }
  } else {
    // g = -1: margins shrink like (u_- - u_+ - t)/2, death is unconditional.
    r.panel = Panel::MirrorFig1;
    r.death = um - up;
    r.vacuum_after = true;
  }
}

void classify_drag_left(const RiemannData& d, int sign, CaseReport& r) {
  const double um = d.u_minus, up = d.u_plus, sum = d.u_sum();
  if (sign < 0) {
    if (um > 0.0 && up > 0.0) {
      r.panel = Panel::Fig2a;
      const double t3 = std::log(um / up);
      r.times["t3"] = t3;
      r.death = t3;
      r.vacuum_after = true;
    } else if (um > 0.0 && up < 0.0) {
      if (sum > 0.0) {
        r.panel = Panel::Fig2b;
        const double t4 = std::log(-um / up);
        r.times["t4"] = t4;
        // Front turns at t4 and drifts back through x = 0 at t_hat.
        auto s = [um, up](double t) {
          return 0.5 * (um * (1.0 - std::exp(-t)) + up * t);
        };
        auto ds = [um, up](double t) {
          return 0.5 * (um * std::exp(-t) + up);
        };
        if (auto t_hat = num::first_root(s, t4 + 1e-9, 0.5, kHorizon, ds))
          r.times["t_hat"] = *t_hat;
      } else {
        r.panel = Panel::Fig2d;
      }
    } else if (um > 0.0) {  // up == 0
      r.panel = Panel::Fig2c;
    } else if (um == 0.0) {
      r.panel = Panel::Fig2f;
    } else {
      r.panel = Panel::Fig2e;
    }
  } else {
    // g = +u: the left trace grows as u_- e^t; a death exists only when the
    // left state accelerates away downward, i.e. u_- < 0.
    r.panel = Panel::MirrorFig2;
    if (um < 0.0) {
      r.death = std::log(up / um);
      r.vacuum_after = true;
    }
  }
}

void classify_mixed(const RiemannData& d, CaseReport& r) {
  const double um = d.u_minus, up = d.u_plus, sum = d.u_sum();
  auto q = q_fn(d);
  auto dq = [um](double t) { return -um * std::exp(-t) - 1.0; };
  const double t5 = *num::first_root(q, 0.0, 0.25, 1e6, dq);
  r.times["t5"] = t5;
  r.death = t5;
  r.vacuum_after = true;
  if (up < 0.0) r.times["t2*"] = -up;
  if (um < -1.0) r.times["t_tilde"] = std::log(-um);  // q'(t_tilde) = 0
  const double t6 = um > 1.0 ? std::log(um) : 0.0;
  if (um > 1.0) r.times["t6"] = t6;

  auto sigma = [um, up](double t) {
    return 0.5 * (um * std::exp(-t) + up + t);
  };
  auto dsigma = [um](double t) { return 0.5 * (1.0 - um * std::exp(-t)); };
  auto root_sigma = [&](double lo, double hi) {
    return num::newton_polish(sigma, dsigma,
                              num::bisect(sigma, lo, hi, 1e-12), lo, hi);
  };

  if (sum > 0.0) {
    if (um <= 1.0) {
      r.panel = up >= 0.0 ? Panel::Fig3a : Panel::Fig3b;
      return;
    }
    const double e = 1.0 + up + std::log(um);  // 2 * sigma(t6)
    // Inputs within rounding noise of the dividing surface take the
    // equality branch.
    const double e_tol =
        8.0 * DBL_EPSILON * (1.0 + std::abs(up) + std::abs(std::log(um)));
    if (std::abs(e) <= e_tol) {
      r.panel = Panel::Fig3c;
    } else if (e < 0.0) {
      r.panel = Panel::Fig3d;
      r.times["t7"] = root_sigma(0.0, t6);
      r.times["t8"] = root_sigma(t6, t5);
    } else {
      // sigma stays positive; the shape depends on whether the inflection
      // at t6 happens before the death time.
      if (t5 > t6)
        r.panel = Panel::Fig3c;
      else
        r.panel = up >= 0.0 ? Panel::Fig3e : Panel::Fig3f;
    }
  } else if (sum < 0.0) {
    if (um <= 0.0) {
      r.panel = Panel::Fig4a;
    } else if (um <= 1.0) {
      r.panel = Panel::Fig4b;
      r.times["t9"] = root_sigma(0.0, t5);
    } else {
      r.panel = Panel::Fig5;
      r.times["t9"] = root_sigma(t6, t5);
    }
  } else {
    // u_- + u_+ = 0: the front starts at rest; u_- > 0 is forced.
    if (um <= 1.0) {
      r.panel = Panel::Fig4b;
      r.times["t9"] = 0.0;
    } else {
      r.panel = Panel::Fig5;
      r.times["t9"] = root_sigma(t6, t5);
    }
  }
}

}  // namespace

CaseReport classify(const RiemannData& data, const SourceSpec& source) {
  validate(data, source);
  CaseReport r;
  r.regime = source.kind();
  r.sign = source.sign();
  switch (source.kind()) {
    case SourceKind::Homogeneous:
      r.panel = Panel::Hom;
      break;
    case SourceKind::ConstLeft:
      classify_const_left(data, source.sign(), r);
      break;
    case SourceKind::LinearDragLeft:
      classify_drag_left(data, source.sign(), r);
      break;
    case SourceKind::MixedConstRightDragLeft:
      classify_mixed(data, r);
      break;
    case SourceKind::UniformDrag:
      r.panel = Panel::UniformDrag;
      break;
    case SourceKind::General: {
      r.panel = Panel::General;
      const auto res = grh::integrate(data, source, kHorizon, 1e-10);
      if (res.reason == grh::StopReason::EntropyDeath) {
        r.death = res.death;
        r.vacuum_after = true;
      }
      break;
    }
  }
  return r;
}

std::function<std::pair<double, double>(double)> entropy_margin(
    const PiecewiseField& field) {
  return [field](double t) {
    const double s = field.path().sigma(t);
    return std::pair<double, double>{s - field.u_right(t),
                                     field.u_left(t) - s};
  };
}

}  // namespace deltashock::critical
