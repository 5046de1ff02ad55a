#include "deltashock/model.hpp"

#include <cmath>
#include <sstream>

namespace deltashock {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonPositiveDensity: return "NonPositiveDensity";
    case ErrorCode::NoDeltaShock: return "NoDeltaShock";
    case ErrorCode::UnsupportedSource: return "UnsupportedSource";
    case ErrorCode::NoDeath: return "NoDeath";
    case ErrorCode::NoCluster: return "NoCluster";
    case ErrorCode::StepUnderflow: return "StepUnderflow";
    case ErrorCode::QuadratureFailure: return "QuadratureFailure";
  }
  return "Unknown";
}

const char* to_string(SourceKind kind) {
  switch (kind) {
    case SourceKind::Homogeneous: return "homogeneous";
    case SourceKind::ConstLeft: return "const_left";
    case SourceKind::LinearDragLeft: return "drag_left";
    case SourceKind::MixedConstRightDragLeft: return "mixed";
    case SourceKind::UniformDrag: return "uniform_drag";
    case SourceKind::General: return "general";
  }
  return "unknown";
}

RiemannData::RiemannData(double rm, double um, double rp, double up)
    : rho_minus(rm), u_minus(um), rho_plus(rp), u_plus(up) {
  if (!(rho_minus > 0.0) || !(rho_plus > 0.0) || !std::isfinite(rho_minus) ||
      !std::isfinite(rho_plus)) {
    std::ostringstream msg;
    msg << "densities must be strictly positive, got rho_minus=" << rho_minus
        << " rho_plus=" << rho_plus;
    throw Error(ErrorCode::NonPositiveDensity, msg.str());
  }
  if (!std::isfinite(u_minus) || !std::isfinite(u_plus) ||
      !(u_minus > u_plus)) {
    std::ostringstream msg;
    msg << "delta shock requires u_minus > u_plus, got u_minus=" << u_minus
        << " u_plus=" << u_plus;
    throw Error(ErrorCode::NoDeltaShock, msg.str());
  }
}

SourceSpec SourceSpec::homogeneous() {
  return SourceSpec(SourceKind::Homogeneous, 0);
}

SourceSpec SourceSpec::const_left(int sign) {
  if (sign != 1 && sign != -1)
    throw Error(ErrorCode::UnsupportedSource, "const_left sign must be +1 or -1");
  return SourceSpec(SourceKind::ConstLeft, sign);
}

SourceSpec SourceSpec::drag_left(int sign) {
  if (sign != 1 && sign != -1)
    throw Error(ErrorCode::UnsupportedSource, "drag_left sign must be +1 or -1");
  return SourceSpec(SourceKind::LinearDragLeft, sign);
}

SourceSpec SourceSpec::mixed() {
  return SourceSpec(SourceKind::MixedConstRightDragLeft, 0);
}

SourceSpec SourceSpec::uniform_drag() {
  return SourceSpec(SourceKind::UniformDrag, 0);
}

SourceSpec SourceSpec::general(Rhs f, Rhs g) {
  if (!f || !g)
    throw Error(ErrorCode::UnsupportedSource, "general source needs both f and g");
  SourceSpec s(SourceKind::General, 0);
  s.f_ = std::move(f);
  s.g_ = std::move(g);
  return s;
}

double SourceSpec::f(double t, double u) const {
  switch (kind_) {
    case SourceKind::Homogeneous:
    case SourceKind::ConstLeft:
    case SourceKind::LinearDragLeft: return 0.0;
    case SourceKind::MixedConstRightDragLeft: return 1.0;
    case SourceKind::UniformDrag: return -u;
    case SourceKind::General: return f_(t, u);
  }
  return 0.0;
}

double SourceSpec::g(double t, double u) const {
  switch (kind_) {
    case SourceKind::Homogeneous: return 0.0;
    case SourceKind::ConstLeft: return static_cast<double>(sign_);
    case SourceKind::LinearDragLeft: return sign_ * u;
    case SourceKind::MixedConstRightDragLeft: return -u;
    case SourceKind::UniformDrag: return -u;
    case SourceKind::General: return g_(t, u);
  }
  return 0.0;
}

namespace {

void check_path(const DeltaShockPath::Fn& s, const DeltaShockPath::Fn& w,
                const DeltaShockPath::Fn& u_delta, const DeltaShockPath::Fn& sigma,
                const std::optional<double>& t_death) {
  if (!s || !w || !u_delta || !sigma)
    throw std::invalid_argument("DeltaShockPath needs all four functions");
  if (std::abs(s(0.0)) > 1e-9)
    throw std::invalid_argument("DeltaShockPath requires s(0) = 0");
  if (std::abs(w(0.0)) > 1e-9)
    throw std::invalid_argument("DeltaShockPath requires w(0) = 0");
  const double horizon = t_death ? *t_death : 1.0;
  for (double frac : {0.0, 0.31, 0.73, 0.97}) {
    const double t = frac * horizon;
    const double a = sigma(t), b = u_delta(t);
    if (std::abs(a - b) > 1e-9 * std::max(1.0, std::abs(b)))
      throw std::invalid_argument("DeltaShockPath requires sigma == u_delta");
  }
}

}  // namespace

DeltaShockPath::DeltaShockPath(Fn s, Fn w, Fn u_delta, Fn sigma,
                               std::optional<double> t_death,
                               std::vector<PathSample> samples)
    : s_(std::move(s)),
      w_(std::move(w)),
      u_delta_(std::move(u_delta)),
      sigma_(std::move(sigma)),
      t_death_(t_death),
      samples_(std::move(samples)) {
  check_path(s_, w_, u_delta_, sigma_, t_death_);
}

DeltaShockPath DeltaShockPath::unchecked(Fn s, Fn w, Fn u_delta, Fn sigma,
                                         std::optional<double> t_death,
                                         std::vector<PathSample> samples) {
  DeltaShockPath p;
  p.s_ = std::move(s);
  p.w_ = std::move(w);
  p.u_delta_ = std::move(u_delta);
  p.sigma_ = std::move(sigma);
  p.t_death_ = t_death;
  p.samples_ = std::move(samples);
  return p;
}

VacuumRegion::VacuumRegion(double t_start, Fn x_left, Fn x_right)
    : t_start_(t_start), x_left_(std::move(x_left)), x_right_(std::move(x_right)) {
  if (!x_left_ || !x_right_)
    throw std::invalid_argument("VacuumRegion needs both boundary functions");
  const double a = x_left_(t_start_), b = x_right_(t_start_);
  if (std::abs(a - b) > 1e-9 * std::max(1.0, std::abs(a)))
    throw std::invalid_argument("vacuum boundaries must coincide at t_start");
  const double probe = t_start_ + 0.5;
  if (!(x_left_(probe) < x_right_(probe)))
    throw std::invalid_argument("vacuum boundaries must separate for t > t_start");
}

PiecewiseField::PiecewiseField(RiemannData data, SourceSpec source, Fn u_left,
                               Fn u_right, DeltaShockPath path,
                               std::optional<VacuumRegion> vacuum)
    : data_(data),
      source_(std::move(source)),
      u_left_(std::move(u_left)),
      u_right_(std::move(u_right)),
      path_(std::move(path)),
      vacuum_(std::move(vacuum)) {
  if (!u_left_ || !u_right_)
    throw std::invalid_argument("PiecewiseField needs both velocity traces");
}

std::pair<double, double> PiecewiseField::left_state(double, double t) const {
  return {data_.rho_minus, u_left_(t)};
}

std::pair<double, double> PiecewiseField::right_state(double, double t) const {
  return {data_.rho_plus, u_right_(t)};
}

PiecewiseField PiecewiseField::with_vacuum(VacuumRegion v) const {
  PiecewiseField out = *this;
  out.vacuum_ = std::move(v);
  return out;
}

PiecewiseField PiecewiseField::with_path(DeltaShockPath p) const {
  PiecewiseField out = *this;
  out.path_ = std::move(p);
  out.vacuum_.reset();
  return out;
}

Problem validate(const RiemannData& data, const SourceSpec& source) {
  // RiemannData and SourceSpec cannot exist in an invalid state, so this
  // re-checks and packages. Kept as the single entry point for callers that
  // assemble problems from parsed input.
  if (!(data.rho_minus > 0.0) || !(data.rho_plus > 0.0))
    throw Error(ErrorCode::NonPositiveDensity, "densities must be positive");
  if (!(data.u_minus > data.u_plus))
    throw Error(ErrorCode::NoDeltaShock, "u_minus must exceed u_plus");
  return Problem{data, source};
}

}  // namespace deltashock
