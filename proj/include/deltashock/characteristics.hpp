#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "deltashock/model.hpp"

namespace deltashock::characteristics {

enum class Side { Left, Right };

struct CharCurve {
  double x0 = 0.0;
  Side side = Side::Left;
  std::function<double(double)> trace;  // t -> x
  std::optional<double> clipped_at;     // first positive intersection with s(t)
};

// Antiderivative of the side velocity: displacement of any characteristic on
// that side between times 0 and t. Throws UnsupportedSource for General.
double side_displacement(const SourceSpec& source, const RiemannData& data,
                         Side side, double t);

// Closed-form characteristic through (x0, 0); x0 must be nonzero and picks
// the side.
CharCurve characteristic(const SourceSpec& source, const RiemannData& data,
                         double x0);

// Sets clipped_at to the smallest t > 0 with trace(t) = s(t). Bracketed
// root-finding first; tangential contacts are caught by a golden-section
// minimum of |trace - s| when no sign change exists.
CharCurve clip_to_front(CharCurve curve, const DeltaShockPath& path,
                        double horizon = 50.0);

// Vacuum wedge for fields with a death time: both boundaries start at
// s(t_death) with the front's slope and follow the side characteristics.
// Returns nullopt when the field has no death time; throws NoDeath via
// vacuum_region_checked for callers that require one.
std::optional<VacuumRegion> vacuum_region(const PiecewiseField& field);
VacuumRegion vacuum_region_checked(const PiecewiseField& field);

struct Polyline {
  int id = 0;
  std::string tag;  // left | right | front | vac_left | vac_right
  std::vector<std::array<double, 2>> points;  // (t, x)
};

// Characteristic fan on both sides plus the front and vacuum boundaries,
// sampled with step dt up to t_max. Seeds are geometric in |x0|, densest
// near the origin.
std::vector<Polyline> sample_fan(const PiecewiseField& field, int n_curves,
                                 double t_max, double dt);

}  // namespace deltashock::characteristics
