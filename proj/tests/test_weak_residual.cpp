#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "deltashock/exact.hpp"
#include "deltashock/grh_ode.hpp"
#include "deltashock/model.hpp"
#include "deltashock/weak_residual.hpp"

using namespace deltashock;

namespace {

double rel(double residual, const weak::TestFunction& phi) {
  return std::abs(residual) / (phi.sup_norm() * phi.area());
}

}  // namespace

TEST_CASE("bump support must live in t > 0 and inside validity") {
  CHECK_THROWS_AS(weak::TestFunction(0, 0.5, 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(weak::TestFunction(0, 1, 0, 0.5), std::invalid_argument);

  const auto field = exact::solve_drag_left(RiemannData(1, 2, 1, 1), -1);
  const weak::TestFunction late(0, 2.0, 0.5, 0.5);  // beyond t3 = ln 2
  CHECK_THROWS_AS(weak::residual_mass(field, late), std::invalid_argument);
}

TEST_CASE("bump vanishes smoothly on its support boundary") {
  const weak::TestFunction phi(0.5, 1.0, 0.4, 0.3);
  CHECK(phi.phi(0.5, 1.0) == doctest::Approx(std::exp(-1.0)));
  CHECK(phi.phi(0.9, 1.0) == 0.0);
  CHECK(phi.phi_x(0.9, 1.0) == 0.0);
  CHECK(phi.phi_t(0.5, 1.3) == 0.0);
  CHECK(phi.phi(0.85, 1.0) > 0.0);
  // analytic partials agree with finite differences inside the support
  const double h = 1e-6;
  const double fd_x = (phi.phi(0.6 + h, 1.1) - phi.phi(0.6 - h, 1.1)) / (2 * h);
  CHECK(phi.phi_x(0.6, 1.1) == doctest::Approx(fd_x).epsilon(1e-7));
  const double fd_t = (phi.phi(0.6, 1.1 + h) - phi.phi(0.6, 1.1 - h)) / (2 * h);
  CHECK(phi.phi_t(0.6, 1.1) == doctest::Approx(fd_t).epsilon(1e-7));
}

TEST_CASE("exact solutions pass the default battery") {
  const RiemannData d(1, 2, 1, 0);
  const auto cases = {SourceSpec::homogeneous(), SourceSpec::const_left(+1),
                      SourceSpec::drag_left(-1), SourceSpec::mixed(),
                      SourceSpec::uniform_drag()};
  for (const auto& source : cases) {
    CAPTURE(to_string(source.kind()));
    const auto field = exact::solve(d, source);
    const auto report =
        weak::verify(field, source, weak::default_battery(field, 4.0));
    CHECK(report.pass);
    for (const auto& b : report.bumps) {
      CHECK(rel(b.r_velocity, b.phi) <= 1e-6);
      CHECK(rel(b.r_mass, b.phi) <= 1e-6);
    }
  }
}

TEST_CASE("grh trajectories pass the battery too") {
  const RiemannData d(1, 1.5, 2, -0.5);
  const auto gen =
      SourceSpec::general([](double t, double) { return 0.5 * t; },
                          [](double, double u) { return -0.5 * u; });
  const auto res = grh::integrate(d, gen, 3.0, 1e-12);
  const auto field = grh::to_field(res, d, gen);
  const double T = res.death ? *res.death : 3.0;
  const auto report =
      weak::verify(field, gen, weak::default_battery(field, T));
  CHECK(report.pass);
}

TEST_CASE("a bump over a constant state sees a zero residual") {
  const RiemannData d(1, 2, 1, 0);
  const auto field = exact::solve_homogeneous(d);
  // right state (1, 0) with f = 0: constants solve the equations
  const weak::TestFunction phi(field.path().s(1.0) + 3.0, 1.0, 0.5, 0.5);
  CHECK(rel(weak::residual_velocity(field, field.source(), phi), phi) <= 1e-9);
  CHECK(rel(weak::residual_mass(field, phi), phi) <= 1e-9);
}

TEST_CASE("a shifted front is detected") {
  for (const auto& source : {SourceSpec::homogeneous(), SourceSpec::mixed()}) {
    const RiemannData d(1, 2, 1, 0);
    const auto field = exact::solve(d, source);
    const auto bumps = weak::default_battery(field, 4.0);
    const auto bad = weak::perturb_front(field, 0.1);
    double worst = 0.0;
    for (const auto& phi : bumps) {
      worst = std::max(worst, rel(weak::residual_velocity(bad, source, phi), phi));
      worst = std::max(worst, rel(weak::residual_mass(bad, phi), phi));
    }
    CAPTURE(to_string(source.kind()));
    CHECK(worst >= 1e-2);
    CHECK_FALSE(weak::verify(bad, source, bumps).pass);
  }
}

TEST_CASE("front term is linear in the weight") {
  const RiemannData d(1, 2, 1, 0);
  const auto field = exact::solve_mixed(d);
  const auto p = field.path();
  const weak::TestFunction phi(p.s(0.4), 0.4, 0.5, 0.25);

  // scale w by 1.1: the residual moves by exactly -0.1 * front term
  auto scaled = field.with_path(DeltaShockPath::unchecked(
      [p](double t) { return p.s(t); },
      [p](double t) { return 1.1 * p.w(t); },
      [p](double t) { return p.u_delta(t); },
      [p](double t) { return p.sigma(t); }, p.t_death()));

  const double r0 = weak::residual_mass(field, phi);
  const double r1 = weak::residual_mass(scaled, phi);
  const double front = weak::front_mass_term(field, phi);
  CHECK(r1 - r0 == doctest::Approx(-0.1 * front).epsilon(1e-9));
  // and the perturbation is visible
  CHECK(std::abs(r1) >= 0.05 * std::abs(front));
}

TEST_CASE("residuals are linear in the test function") {
  const RiemannData d(1, 2, 1, 0);
  const auto field = exact::solve_mixed(d);
  const auto source = field.source();
  const weak::TestFunction phi1(field.path().s(0.35), 0.35, 0.45, 0.2);
  const weak::TestFunction phi2(field.path().s(0.55) + 0.2, 0.55, 0.5, 0.25);

  // use the deliberately broken field so the residuals are nonzero
  const auto bad = weak::perturb_front(field, 0.05);
  const double a = 2.0, b = -3.0;
  const weak::WeightedBumps combo{{a, phi1}, {b, phi2}};

  const double rv = weak::residual_velocity(bad, source, combo);
  const double rv1 = weak::residual_velocity(bad, source, phi1);
  const double rv2 = weak::residual_velocity(bad, source, phi2);
  CHECK(rv == doctest::Approx(a * rv1 + b * rv2).epsilon(1e-6));

  const double rm = weak::residual_mass(bad, combo);
  const double rm1 = weak::residual_mass(bad, phi1);
  const double rm2 = weak::residual_mass(bad, phi2);
  CHECK(rm == doctest::Approx(a * rm1 + b * rm2).epsilon(1e-6));
}

TEST_CASE("refinement drives the residual to the tolerance floor") {
  const RiemannData d(1, 2, 1, 0);
  const auto field = exact::solve_mixed(d);
  const weak::TestFunction phi(field.path().s(0.4), 0.4, 0.5, 0.25);

  weak::QuadratureOptions opt;
  auto at = [&](int slices) {
    opt.fixed_slices = slices;
    return std::abs(weak::residual_velocity(field, field.source(), phi, opt));
  };
  const double c4 = at(4), c16 = at(16), c64 = at(64);
  CHECK(c16 <= c4 + 1e-14);
  CHECK(c64 <= 1e-6 * phi.sup_norm() * phi.area());
  CHECK(c64 <= c4 + 1e-14);
}

TEST_CASE("hopeless tolerances raise QuadratureFailure") {
  const RiemannData d(1, 2, 1, 0);
  const auto field = exact::solve_mixed(d);
  const weak::TestFunction phi(field.path().s(0.4), 0.4, 0.5, 0.25);
  weak::QuadratureOptions opt;
  opt.abs_tol = 1e-300;
  opt.max_depth = 4;
  CHECK_THROWS_AS(weak::residual_velocity(field, field.source(), phi, opt),
                  Error);
}
