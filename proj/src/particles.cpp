#include "deltashock/particles.hpp"

#include <algorithm>
#include <cmath>

namespace deltashock::particles {

double ParticleSystem::total_mass() const {
  double sum = 0.0;
  for (double v : m) sum += v;
  return sum;
}

double ParticleSystem::total_momentum() const {
  double sum = 0.0;
  for (size_t i = 0; i < m.size(); ++i) sum += m[i] * u[i];
  return sum;
}

ParticleSystem init(const RiemannData& data, int n_per_side,
                    double half_width) {
  if (n_per_side < 10)
    throw std::invalid_argument("need at least 10 particles per side");
  if (!(half_width > 0.0))
    throw std::invalid_argument("half_width must be positive");

  ParticleSystem sys;
  const int n = n_per_side;
  sys.x.reserve(2 * n);
  sys.u.reserve(2 * n);
  sys.m.reserve(2 * n);
  const double dx = half_width / n;
  const double m_left = data.rho_minus * dx;
  const double m_right = data.rho_plus * dx;
  for (int i = 0; i < n; ++i) {
    sys.x.push_back(-half_width + (i + 0.5) * dx);
    sys.u.push_back(data.u_minus);
    sys.m.push_back(m_left);
  }
  for (int i = 0; i < n; ++i) {
    sys.x.push_back((i + 0.5) * dx);
    sys.u.push_back(data.u_plus);
    sys.m.push_back(m_right);
  }
  sys.m0_max = std::max(m_left, m_right);
  return sys;
}

namespace {

// Single left-to-right sweep with a stack: each merged particle is
// re-checked against its new left neighbour, so one pass restores strict
// ordering.
void merge_pass(ParticleSystem& sys) {
  const size_t n = sys.x.size();
  size_t top = 0;  // particles [0, top) are ordered
  for (size_t i = 0; i < n; ++i) {
    double x = sys.x[i], u = sys.u[i], m = sys.m[i];
    while (top > 0 && sys.x[top - 1] >= x) {
      const double m2 = sys.m[top - 1] + m;
      x = (sys.m[top - 1] * sys.x[top - 1] + m * x) / m2;
      u = (sys.m[top - 1] * sys.u[top - 1] + m * u) / m2;
      m = m2;
      --top;
    }
    sys.x[top] = x;
    sys.u[top] = u;
    sys.m[top] = m;
    ++top;
  }
  sys.x.resize(top);
  sys.u.resize(top);
  sys.m.resize(top);
}

}  // namespace

void step(ParticleSystem& sys, const SourceSpec& source, double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("dt must be positive");
  if (source.kind() != SourceKind::Homogeneous &&
      source.kind() != SourceKind::UniformDrag)
    throw Error(ErrorCode::UnsupportedSource,
                "sticky-particle oracle supports homogeneous and uniform-drag "
                "sources only (f = g)");

  const size_t n = sys.x.size();
  for (size_t i = 0; i < n; ++i) sys.x[i] += sys.u[i] * dt;
  if (source.kind() == SourceKind::UniformDrag) {
    const double factor = std::exp(-dt);
    for (size_t i = 0; i < n; ++i) sys.u[i] *= factor;
  }
  merge_pass(sys);
  sys.t += dt;
}

Cluster extract_front(const ParticleSystem& sys) {
  const auto it = std::max_element(sys.m.begin(), sys.m.end());
  if (it == sys.m.end() || *it <= 3.0 * sys.m0_max)
    throw Error(ErrorCode::NoCluster, "no merged cluster yet");
  const size_t i = static_cast<size_t>(it - sys.m.begin());
  return Cluster{sys.x[i], sys.m[i]};
}

FrontHistory extract_front(const ParticleSystem& sys,
                           const std::vector<ParticleSystem>& history) {
  const Cluster last = extract_front(sys);  // throws NoCluster when absent
  FrontHistory out;
  for (const ParticleSystem& past : history) {
    try {
      const Cluster c = extract_front(past);
      out.trajectory.emplace_back(past.t, c.x);
      out.mass.emplace_back(past.t, c.mass);
    } catch (const Error&) {
      // recorded before the cluster formed
    }
  }
  if (out.trajectory.empty() || out.trajectory.back().first < sys.t) {
    out.trajectory.emplace_back(sys.t, last.x);
    out.mass.emplace_back(sys.t, last.mass);
  }
  return out;
}

std::vector<RunSample> run(const RiemannData& data, const SourceSpec& source,
                           int n_per_side, double half_width, double dt,
                           double t_end, double record_dt) {
  ParticleSystem sys = init(data, n_per_side, half_width);
  std::vector<RunSample> samples;
  double next_record = record_dt;
  while (sys.t < t_end - 0.5 * dt) {
    step(sys, source, dt);
    if (sys.t + 1e-12 >= next_record) {
      next_record += record_dt;
      Cluster c{};
      try {
        c = extract_front(sys);
      } catch (const Error&) {
        continue;  // cluster not formed yet
      }
      samples.push_back({sys.t, c.x, c.mass, sys.total_mass(),
                         sys.total_momentum()});
    }
  }
  return samples;
}

}  // namespace deltashock::particles
