#pragma once

#include <vector>

#include "deltashock/model.hpp"

namespace deltashock::particles {

// Mass points with strictly increasing positions; collisions merge
// inelastically, conserving mass and momentum.
struct ParticleSystem {
  std::vector<double> x, u, m;
  double t = 0.0;
  double m0_max = 0.0;  // largest initial single-particle mass

  double total_mass() const;
  double total_momentum() const;
};

// n equi-spaced particles per side on [-half_width, 0) and (0, half_width],
// carrying the side density's mass and velocity.
ParticleSystem init(const RiemannData& data, int n_per_side, double half_width);

// One step: x += u dt, then the per-source velocity update (none for
// Homogeneous, exact factor e^{-dt} for UniformDrag), then merge every
// ordering violation until positions are strictly increasing again. Only
// sources with an unambiguous per-particle force are accepted.
void step(ParticleSystem& sys, const SourceSpec& source, double dt);

struct Cluster {
  double x = 0.0;
  double mass = 0.0;
};

// The heaviest particle, required to exceed 3x the initial particle mass;
// throws Error(NoCluster) before the first merges build one.
Cluster extract_front(const ParticleSystem& sys);

struct FrontHistory {
  std::vector<std::pair<double, double>> trajectory;  // (t, x)
  std::vector<std::pair<double, double>> mass;        // (t, m)
};

// Cluster position and mass per recorded time over a run's history (plus the
// final state); recorded states that predate the cluster are skipped.
FrontHistory extract_front(const ParticleSystem& sys,
                           const std::vector<ParticleSystem>& history);

struct RunSample {
  double t, cluster_x, cluster_mass, total_mass, total_momentum;
};

// Steps the system to t_end, recording the cluster roughly every record_dt
// once one exists.
std::vector<RunSample> run(const RiemannData& data, const SourceSpec& source,
                           int n_per_side, double half_width, double dt,
                           double t_end, double record_dt);

}  // namespace deltashock::particles
