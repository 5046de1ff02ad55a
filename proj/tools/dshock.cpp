// dshock: solve, classify, and verify delta-shock Riemann problems for the
// pressureless Euler system with a front-attached discontinuous source.
//
// Exit codes: 0 ok, 2 invalid scenario, 3 verification failure,
// 4 source unsupported by the particle oracle, 1 anything else.

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "deltashock/characteristics.hpp"
#include "deltashock/critical.hpp"
#include "deltashock/exact.hpp"
#include "deltashock/grh_ode.hpp"
#include "deltashock/io.hpp"
#include "deltashock/model.hpp"
#include "deltashock/particles.hpp"
#include "deltashock/scenario.hpp"
#include "deltashock/weak_residual.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace deltashock;

namespace {

struct Options {
  fs::path out = ".";
  double verify_threshold = 1e-6;
  double perturb_front = 0.0;
  int n_particles = 4000;
};

struct Outcome {
  int exit_code = 0;
  std::string stdout_text;
  std::string stderr_text;
};

std::string error_json(const std::string& code, const std::string& message) {
  return json{{"error", code}, {"message", message}}.dump() + "\n";
}

std::string trajectory_csv(const PiecewiseField& field, double t_max) {
  const DeltaShockPath& path = field.path();
  const auto death = path.t_death();
  std::string csv = "t,s,w,sigma,u_l,u_r\n";
  auto row = [&](double t) {
    csv += io::csv_row({io::fmt17(t), io::fmt17(path.s(t)), io::fmt17(path.w(t)),
                        io::fmt17(path.sigma(t)), io::fmt17(field.u_left(t)),
                        io::fmt17(field.u_right(t))});
  };
  const int n = 2000;
  const double dt = t_max / n;
  for (int k = 0; k <= n; ++k) {
    const double t = k * dt;
    if (death && t >= *death - 1e-12) break;
    row(t);
  }
  if (death && *death <= t_max) {
    row(*death);
    csv += "# death t=" + io::fmt17(*death) + "\n";
  }
  return csv;
}

PiecewiseField field_for(const scenario::Scenario& sc) {
  return exact::solve(sc.data, sc.source);
}

Outcome cmd_solve(const scenario::Scenario& sc, const std::string& stem,
                  const Options& opt) {
  const PiecewiseField field = field_for(sc);
  io::write_file(opt.out / (stem + "_trajectory.csv"),
                 trajectory_csv(field, sc.t_max));
  return {};
}

Outcome cmd_classify(const scenario::Scenario& sc, const std::string& stem,
                     const Options& opt) {
  const auto report = critical::classify(sc.data, sc.source);
  const json j = scenario::to_json(report);
  io::write_file(opt.out / (stem + "_report.json"), j.dump(2) + "\n");
  return {0, j.dump() + "\n", ""};
}

Outcome cmd_fan(const scenario::Scenario& sc, const std::string& stem,
                const Options& opt) {
  const PiecewiseField field = field_for(sc);
  const double dt = sc.fan.dt > 0.0 ? sc.fan.dt : sc.t_max / 2000.0;
  const auto lines =
      characteristics::sample_fan(field, sc.fan.curves, sc.t_max, dt);
  std::string csv = "curve_id,tag,t,x\n";
  for (const auto& line : lines)
    for (const auto& pt : line.points)
      csv += io::csv_row({std::to_string(line.id), line.tag, io::fmt17(pt[0]),
                          io::fmt17(pt[1])});
  io::write_file(opt.out / (stem + "_fan.csv"), csv);
  return {};
}

Outcome cmd_verify(const scenario::Scenario& sc, const std::string& stem,
                   const Options& opt) {
  PiecewiseField field = field_for(sc);
  const auto bumps = weak::default_battery(field, sc.t_max);
  if (opt.perturb_front != 0.0)
    field = weak::perturb_front(field, opt.perturb_front);
  const auto report =
      weak::verify(field, sc.source, bumps, opt.verify_threshold);
  const json j = scenario::to_json(report);
  io::write_file(opt.out / (stem + "_verify.json"), j.dump(2) + "\n");
  Outcome out{0, j.dump() + "\n", ""};
  if (!report.pass) {
    json failing = json::array();
    for (const auto& b : report.bumps)
      if (!b.pass)
        failing.push_back(json{{"center", {b.phi.cx, b.phi.ct}},
                               {"residual_velocity", b.r_velocity},
                               {"residual_mass", b.r_mass}});
    out.exit_code = 3;
    out.stderr_text =
        json{{"error", "VerificationFailed"}, {"failing_bumps", failing}}
            .dump() +
        "\n";
  }
  return out;
}

Outcome cmd_oracle(const scenario::Scenario& sc, const std::string& stem,
                   const Options& opt) {
  if (sc.source.kind() != SourceKind::Homogeneous &&
      sc.source.kind() != SourceKind::UniformDrag) {
    return {4, "",
            error_json("UnsupportedSource",
                       "particle oracle needs an unambiguous per-particle "
                       "force; only homogeneous and uniform_drag qualify")};
  }
  const PiecewiseField field = field_for(sc);
  const double half_width = 3.0;
  const double spacing = half_width / opt.n_particles;
  const double dt = 0.25 * spacing / std::max(1.0, sc.data.u_jump());
  const auto samples = particles::run(sc.data, sc.source, opt.n_particles,
                                      half_width, dt, sc.t_max, 0.01);
  std::string csv =
      "t,cluster_x,s_exact,err_x,cluster_mass,w_exact,err_mass,total_mass,"
      "total_momentum\n";
  double max_err_x = 0.0, max_rel_err_mass = 0.0;
  for (const auto& s : samples) {
    const double s_exact = field.path().s(s.t);
    const double w_exact = field.path().w(s.t);
    const double err_x = std::abs(s.cluster_x - s_exact);
    const double err_m = std::abs(s.cluster_mass - w_exact);
    if (s.t >= 0.2) {
      max_err_x = std::max(max_err_x, err_x);
      if (w_exact > 0.0)
        max_rel_err_mass = std::max(max_rel_err_mass, err_m / w_exact);
    }
    csv += io::csv_row({io::fmt17(s.t), io::fmt17(s.cluster_x),
                        io::fmt17(s_exact), io::fmt17(err_x),
                        io::fmt17(s.cluster_mass), io::fmt17(w_exact),
                        io::fmt17(err_m), io::fmt17(s.total_mass),
                        io::fmt17(s.total_momentum)});
  }
  io::write_file(opt.out / (stem + "_oracle.csv"), csv);
  const json summary{{"n_particles", opt.n_particles},
                     {"max_err_x", max_err_x},
                     {"max_rel_err_mass", max_rel_err_mass},
                     {"records", samples.size()}};
  return {0, summary.dump() + "\n", ""};
}

Outcome run_one(const std::string& command, const fs::path& scenario_path,
                const Options& opt) {
  try {
    const auto sc = scenario::load_scenario(scenario_path);
    const std::string stem = scenario_path.stem().string();
    if (command == "solve") return cmd_solve(sc, stem, opt);
    if (command == "classify") return cmd_classify(sc, stem, opt);
    if (command == "fan") return cmd_fan(sc, stem, opt);
    if (command == "verify") return cmd_verify(sc, stem, opt);
    if (command == "oracle") return cmd_oracle(sc, stem, opt);
    return {1, "", error_json("BadCommand", "unknown command: " + command)};
  } catch (const Error& e) {
    const int code = (e.code() == ErrorCode::NonPositiveDensity ||
                      e.code() == ErrorCode::NoDeltaShock ||
                      e.code() == ErrorCode::UnsupportedSource)
                         ? 2
                         : 1;
    return {code, "", error_json(to_string(e.code()), e.what())};
  } catch (const std::exception& e) {
    return {2, "", error_json("BadScenario", e.what())};
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "delta-shock solver/verifier for the pressureless Euler system with a "
      "discontinuous source attached to the front"};
  app.require_subcommand(1);

  std::string scenario_arg;
  Options opt;
  for (const char* name : {"solve", "classify", "fan", "verify", "oracle"}) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("scenario", scenario_arg,
                    "scenario JSON file, or a directory of them")
        ->required();
    sub->add_option("--out", opt.out, "output directory");
    if (std::string(name) == "verify") {
      sub->add_option("--tol", opt.verify_threshold,
                      "relative residual pass threshold")
          ->check(CLI::Range(1e-14, 1e-1));
      sub->add_option("--perturb-front", opt.perturb_front,
                      "shift the front by a*t before verifying");
    }
    if (std::string(name) == "oracle")
      sub->add_option("--n-particles", opt.n_particles,
                      "particles per side for the oracle")
          ->check(CLI::PositiveNumber);
  }

  CLI11_PARSE(app, argc, argv);
  const std::string command = app.get_subcommands().front()->get_name();

  std::error_code ec;
  fs::create_directories(opt.out, ec);

  const fs::path target(scenario_arg);
  if (!fs::is_directory(target)) {
    const Outcome outcome = run_one(command, target, opt);
    std::cout << outcome.stdout_text;
    std::cerr << outcome.stderr_text;
    return outcome.exit_code;
  }

  // Batch mode: every *.json in the directory, processed in parallel, output
  // reported in name order.
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(target))
    if (entry.path().extension() == ".json") files.push_back(entry.path());
  std::sort(files.begin(), files.end());

  std::vector<Outcome> outcomes(files.size());
  std::atomic<size_t> next{0};
  const unsigned n_threads =
      std::min<unsigned>(std::max(1u, std::thread::hardware_concurrency()),
                         static_cast<unsigned>(files.size()));
  std::vector<std::thread> workers;
  for (unsigned i = 0; i < n_threads; ++i)
    workers.emplace_back([&] {
      for (size_t k = next.fetch_add(1); k < files.size();
           k = next.fetch_add(1))
        outcomes[k] = run_one(command, files[k], opt);
    });
  for (auto& w : workers) w.join();

  int exit_code = 0;
  for (size_t k = 0; k < files.size(); ++k) {
    std::cout << json{{"scenario", files[k].stem().string()},
                      {"exit", outcomes[k].exit_code}}
                     .dump()
              << "\n"
              << outcomes[k].stdout_text;
    std::cerr << outcomes[k].stderr_text;
    exit_code = std::max(exit_code, outcomes[k].exit_code);
  }
  return exit_code;
}
