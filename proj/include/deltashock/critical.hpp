#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>

#include "deltashock/model.hpp"

namespace deltashock::critical {

// Figure panels of the case taxonomy plus tags for regimes that have no
// drawn panel (straight homogeneous front, uniform drag, the sign-flipped
// extensions, and numerically integrated general sources).
enum class Panel {
  Hom,
  Fig1a, Fig1b, Fig1c, Fig1d,
  Fig2a, Fig2b, Fig2c, Fig2d, Fig2e, Fig2f,
  Fig3a, Fig3b, Fig3c, Fig3d, Fig3e, Fig3f,
  Fig4a, Fig4b, Fig5,
  MirrorFig1,   // const_left with sign -1
  MirrorFig2,   // drag_left with sign +1
  UniformDrag,
  General,
};

const char* to_string(Panel panel);

struct CaseReport {
  SourceKind regime = SourceKind::Homogeneous;
  int sign = 0;
  Panel panel = Panel::Hom;
  std::map<std::string, double> times;  // keys: t1, t1*, t2, t2*, t3, ...
  std::optional<double> death;
  bool vacuum_after = false;
};

// Entropy margin generators of the drag and mixed regimes:
//   p(t) = u_- e^{-t} - u_+        (g = -u)
//   q(t) = u_- e^{-t} - (u_+ + t)  (f = 1, g = -u)
std::function<double(double)> p_fn(const RiemannData& data);
std::function<double(double)> q_fn(const RiemannData& data);

// Panel tag, critical times, death time and vacuum flag for a validated
// problem. Closed forms where available; otherwise bracketed bisection to
// 1e-12 with a short Newton polish. General sources are classified by
// integrating the jump ODEs to the search horizon.
CaseReport classify(const RiemannData& data, const SourceSpec& source);

inline CaseReport critical_times(const RiemannData& data,
                                 const SourceSpec& source) {
  return classify(data, source);
}

// t -> (sigma - u_right_trace, u_left_trace - sigma); the entropy condition
// holds at t iff both components are positive.
std::function<std::pair<double, double>(double)> entropy_margin(
    const PiecewiseField& field);

// Search horizon for regimes whose margins stay positive forever.
inline constexpr double kHorizon = 50.0;

}  // namespace deltashock::critical
