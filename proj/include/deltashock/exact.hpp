#pragma once

#include <variant>

#include "deltashock/model.hpp"

namespace deltashock::exact {

// Closed-form delta-shock solutions. Each solver returns the piecewise field
// with the front path, the one-sided velocity traces and, when the entropy
// margin vanishes at a finite time, the vacuum wedge that opens afterwards.
PiecewiseField solve_homogeneous(const RiemannData& data);
PiecewiseField solve_const_left(const RiemannData& data, int sign = +1);
PiecewiseField solve_drag_left(const RiemannData& data, int sign = -1);
PiecewiseField solve_mixed(const RiemannData& data);
PiecewiseField solve_uniform_drag(const RiemannData& data);

// Dispatch on the source kind; throws UnsupportedSource for General (use
// grh::integrate + grh::to_field there).
PiecewiseField solve(const RiemannData& data, const SourceSpec& source);

struct Smooth {
  double rho, u;
};
struct Front {
  double w, u_delta;
};
struct Vacuum {};

using State = std::variant<Smooth, Front, Vacuum>;

// Pointwise evaluation: side decided by sign(x - s(t)) while the front is
// alive; exactly on the front returns Front. Past the death time the vacuum
// wedge answers Vacuum strictly between its boundaries.
State eval_state(const PiecewiseField& field, double x, double t);

}  // namespace deltashock::exact
