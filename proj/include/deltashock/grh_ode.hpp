#pragma once

#include <array>
#include <memory>
#include <optional>
#include <vector>

#include "deltashock/model.hpp"

namespace deltashock::grh {

// ODE state for the jump conditions. sigma is not carried: the third jump
// identity with flux u^2/2 fixes sigma = (u_l + u_r)/2.
struct GrhState {
  double t = 0.0;
  double s = 0.0;
  double w = 0.0;
  double u_l = 0.0;
  double u_r = 0.0;

  double sigma() const { return 0.5 * (u_l + u_r); }
};

// sigma*[u] - [u^2/2]; zero whenever sigma is the mean of the traces.
double jump_residual(double u_l, double u_r, double sigma);
inline double jump_residual(const GrhState& st) {
  return jump_residual(st.u_l, st.u_r, st.sigma());
}

enum class StopReason { Horizon, EntropyDeath };

struct Result {
  DeltaShockPath path;
  StopReason reason = StopReason::Horizon;
  std::optional<double> death;      // set when reason == EntropyDeath
  std::vector<GrhState> steps;      // accepted steps, event point included
  double max_jump_residual = 0.0;   // largest |jump_residual| seen

  GrhState eval(double t) const;    // dense output (cubic Hermite)

  // Internal dense-output storage, shared with the path closures.
  struct Dense;
  std::shared_ptr<const Dense> dense;
};

// Adaptive Dormand-Prince 5(4) on (s, w, u_l, u_r):
//   ds/dt = (u_l+u_r)/2,  dw/dt = sigma*[rho] - [rho u],
//   du_l/dt = g(t, u_l),  du_r/dt = f(t, u_r).
// Stops at t_end or when u_l - u_r crosses zero from above; the crossing is
// localized on dense output by bisection to 1e-11 in t. tol must lie in
// [1e-14, 1e-3]. Throws Error(StepUnderflow) below step 1e-14.
Result integrate(const RiemannData& data, const SourceSpec& source,
                 double t_end, double tol);

// Fixed-step variant of the same tableau; used by convergence studies.
Result integrate_fixed(const RiemannData& data, const SourceSpec& source,
                       double t_end, double h);

// Wraps an integration result as a piecewise field (no vacuum attached).
PiecewiseField to_field(const Result& result, const RiemannData& data,
                        const SourceSpec& source);

}  // namespace deltashock::grh
