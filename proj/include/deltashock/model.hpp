#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace deltashock {

// Error codes shared across the toolkit; carried by Error and mapped to
// machine-readable strings by the CLI.
enum class ErrorCode {
  NonPositiveDensity,
  NoDeltaShock,
  UnsupportedSource,
  NoDeath,
  NoCluster,
  StepUnderflow,
  QuadratureFailure,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Constant left/right Riemann states. Only the delta-shock regime u_- > u_+
// with positive densities is representable; the constructor enforces it.
struct RiemannData {
  RiemannData(double rho_minus, double u_minus, double rho_plus, double u_plus);

  double rho_minus;
  double u_minus;
  double rho_plus;
  double u_plus;

  double rho_sum() const { return rho_minus + rho_plus; }
  double u_sum() const { return u_minus + u_plus; }
  double u_jump() const { return u_minus - u_plus; }  // > 0 by construction

  friend bool operator==(const RiemannData&, const RiemannData&) = default;
};

enum class SourceKind {
  Homogeneous,              // f = 0, g = 0
  ConstLeft,                // f = 0, g = sign   (sign in {+1, -1})
  LinearDragLeft,           // f = 0, g = sign*u (base case: sign = -1)
  MixedConstRightDragLeft,  // f = 1, g = -u
  UniformDrag,              // f = g = -u
  General,                  // arbitrary f(t,u), g(t,u)
};

const char* to_string(SourceKind kind);

// Right/left accelerations (f, g) attached to the moving front. Dependence
// on (t, u) only is structural: x-dependent sources are not expressible.
class SourceSpec {
 public:
  using Rhs = std::function<double(double, double)>;

  static SourceSpec homogeneous();
  static SourceSpec const_left(int sign = +1);
  static SourceSpec drag_left(int sign = -1);
  static SourceSpec mixed();
  static SourceSpec uniform_drag();
  static SourceSpec general(Rhs f, Rhs g);

  SourceKind kind() const { return kind_; }
  int sign() const { return sign_; }
  bool closed_form() const { return kind_ != SourceKind::General; }

  double f(double t, double u) const;  // acceleration right of the front
  double g(double t, double u) const;  // acceleration left of the front

  // General specs never compare equal; function identity is not observable.
  bool operator==(const SourceSpec& other) const {
    return kind_ == other.kind_ && sign_ == other.sign_ &&
           kind_ != SourceKind::General;
  }

 private:
  SourceSpec(SourceKind kind, int sign) : kind_(kind), sign_(sign) {}

  SourceKind kind_;
  int sign_ = 0;
  Rhs f_, g_;  // set for General only
};

struct PathSample {
  double t, s, w, u_delta;
};

// The front: t -> (s, w, u_delta, sigma) with s(0) = 0, w(0) = 0 and
// sigma == u_delta on the validity interval [0, t_death).
class DeltaShockPath {
 public:
  using Fn = std::function<double(double)>;

  DeltaShockPath(Fn s, Fn w, Fn u_delta, Fn sigma,
                 std::optional<double> t_death = std::nullopt,
                 std::vector<PathSample> samples = {});

  // Bypasses construction checks. Needed to build deliberately invalid
  // fronts, e.g. the perturbed fronts fed to the weak-form detector.
  static DeltaShockPath unchecked(Fn s, Fn w, Fn u_delta, Fn sigma,
                                  std::optional<double> t_death = std::nullopt,
                                  std::vector<PathSample> samples = {});

  double s(double t) const { return s_(t); }
  double w(double t) const { return w_(t); }
  double u_delta(double t) const { return u_delta_(t); }
  double sigma(double t) const { return sigma_(t); }
  std::optional<double> t_death() const { return t_death_; }
  const std::vector<PathSample>& samples() const { return samples_; }

 private:
  DeltaShockPath() = default;

  Fn s_, w_, u_delta_, sigma_;
  std::optional<double> t_death_;
  std::vector<PathSample> samples_;
};

// Zero-density wedge opening at the death time between the last left and the
// first right characteristic.
class VacuumRegion {
 public:
  using Fn = std::function<double(double)>;

  VacuumRegion(double t_start, Fn x_left, Fn x_right);

  double t_start() const { return t_start_; }
  double x_left(double t) const { return x_left_(t); }
  double x_right(double t) const { return x_right_(t); }

 private:
  double t_start_;
  Fn x_left_, x_right_;
};

// Piecewise solution: smooth one-sided states, the front, and (after death)
// the vacuum wedge. The side states are spatially uniform in every regime
// handled here, so the velocity traces are functions of t alone.
class PiecewiseField {
 public:
  using Fn = std::function<double(double)>;

  PiecewiseField(RiemannData data, SourceSpec source, Fn u_left, Fn u_right,
                 DeltaShockPath path,
                 std::optional<VacuumRegion> vacuum = std::nullopt);

  const RiemannData& data() const { return data_; }
  const SourceSpec& source() const { return source_; }

  double u_left(double t) const { return u_left_(t); }
  double u_right(double t) const { return u_right_(t); }
  std::pair<double, double> left_state(double x, double t) const;   // (rho, u)
  std::pair<double, double> right_state(double x, double t) const;  // (rho, u)

  const DeltaShockPath& path() const { return path_; }
  const std::optional<VacuumRegion>& vacuum() const { return vacuum_; }

  PiecewiseField with_vacuum(VacuumRegion v) const;
  PiecewiseField with_path(DeltaShockPath p) const;

 private:
  RiemannData data_;
  SourceSpec source_;
  Fn u_left_, u_right_;
  DeltaShockPath path_;
  std::optional<VacuumRegion> vacuum_;
};

struct Problem {
  RiemannData data;
  SourceSpec source;
};

// Returns the pair unchanged when all invariants hold; throws Error with
// NonPositiveDensity / NoDeltaShock / UnsupportedSource otherwise.
Problem validate(const RiemannData& data, const SourceSpec& source);

}  // namespace deltashock
