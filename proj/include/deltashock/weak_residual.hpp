#pragma once

#include <utility>
#include <vector>

#include "deltashock/model.hpp"

namespace deltashock::weak {

// Elliptic mollifier bump exp(-1/(1-r^2)) around (cx, ct) with radii
// (rx, rt); all derivatives vanish at the support boundary. The support must
// sit strictly inside t > 0.
class TestFunction {
 public:
  TestFunction(double cx, double ct, double rx, double rt);

  double phi(double x, double t) const;
  double phi_t(double x, double t) const;
  double phi_x(double x, double t) const;

  // Half-width of the support slice at time t; 0 outside [ct-rt, ct+rt].
  double slice_halfwidth(double t) const;

  double sup_norm() const;  // exp(-1), attained at the center
  double area() const;      // pi * rx * rt

  double cx, ct, rx, rt;
};

// Weighted sum of bumps; still a valid test function.
using WeightedBumps = std::vector<std::pair<double, TestFunction>>;

struct QuadratureOptions {
  double abs_tol = -1.0;  // <0: derived from the bump (1e-8 * sup * area)
  int max_depth = 20;
  int nodes_x = 32;
  int fixed_slices = 0;  // >0: uniform composite rule instead of adaptive
};

// <u_t + (u^2/2)_x - source, phi> evaluated distributionally: the pairing
// -iint (u phi_t + u^2/2 phi_x + src phi) over the two smooth regions split
// along the front. By Green's theorem this equals the smooth-side residuals
// plus the front line integral of (sigma[u] - [u^2/2]) phi, so it vanishes
// for admissible fronts. Throws Error(QuadratureFailure) when adaptive
// slicing cannot converge within max_depth.
double residual_velocity(const PiecewiseField& field, const SourceSpec& source,
                         const TestFunction& phi,
                         const QuadratureOptions& opt = {});
double residual_velocity(const PiecewiseField& field, const SourceSpec& source,
                         const WeightedBumps& phi,
                         const QuadratureOptions& opt = {});

// Weak residual of rho_t + (rho u)_x = 0 with the Dirac part w(t) delta on
// the front: -iint (rho phi_t + rho u phi_x) - int w (phi_t + u_delta phi_x).
double residual_mass(const PiecewiseField& field, const TestFunction& phi,
                     const QuadratureOptions& opt = {});
double residual_mass(const PiecewiseField& field, const WeightedBumps& phi,
                     const QuadratureOptions& opt = {});

// Front line integral int w(t) (phi_t + u_delta phi_x)|_(s(t),t) dt; exposed
// because perturbation tests rely on the front term's linearity in w.
double front_mass_term(const PiecewiseField& field, const TestFunction& phi,
                       const QuadratureOptions& opt = {});

// Same field with the front shifted to s(t) + a*t (sigma shifted by a);
// weight and front velocity kept. Deliberately violates the jump conditions.
PiecewiseField perturb_front(const PiecewiseField& field, double a);

struct BumpResult {
  TestFunction phi;
  double r_velocity = 0.0;
  double r_mass = 0.0;
  double threshold = 0.0;  // absolute, threshold_rel * sup * area
  bool pass = false;
};

struct Report {
  std::vector<BumpResult> bumps;
  double threshold_rel = 0.0;
  bool pass = false;
};

// Five deterministic placements: on-front at 0.5 T, straddling at 0.3 T and
// 0.7 T, and one bump fully inside each smooth region.
std::vector<TestFunction> default_battery(const PiecewiseField& field,
                                          double t_horizon);

Report verify(const PiecewiseField& field, const SourceSpec& source,
              const std::vector<TestFunction>& bumps,
              double threshold_rel = 1e-6);

}  // namespace deltashock::weak
