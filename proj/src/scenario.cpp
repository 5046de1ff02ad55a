#include "deltashock/scenario.hpp"

#include <fstream>

namespace deltashock::scenario {

using nlohmann::json;

json to_json(const RiemannData& data) {
  return json{{"rho_minus", data.rho_minus},
              {"u_minus", data.u_minus},
              {"rho_plus", data.rho_plus},
              {"u_plus", data.u_plus}};
}

RiemannData data_from_json(const json& j) {
  return RiemannData(j.at("rho_minus").get<double>(),
                     j.at("u_minus").get<double>(),
                     j.at("rho_plus").get<double>(),
                     j.at("u_plus").get<double>());
}

json to_json(const SourceSpec& source) {
  if (source.kind() == SourceKind::General)
    throw Error(ErrorCode::UnsupportedSource,
                "general sources are not serializable");
  json j{{"kind", to_string(source.kind())}};
  if (source.kind() == SourceKind::ConstLeft ||
      source.kind() == SourceKind::LinearDragLeft)
    j["sign"] = source.sign();
  return j;
}

SourceSpec source_from_json(const json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  int sign = 0;
  if (j.contains("sign")) {
    sign = j.at("sign").get<int>();
    if (sign != 1 && sign != -1)
      throw Error(ErrorCode::UnsupportedSource, "source sign must be +1 or -1");
  }
  if (kind == "homogeneous") return SourceSpec::homogeneous();
  if (kind == "const_left") return SourceSpec::const_left(sign == 0 ? +1 : sign);
  if (kind == "drag_left") return SourceSpec::drag_left(sign == 0 ? -1 : sign);
  if (kind == "mixed") return SourceSpec::mixed();
  if (kind == "uniform_drag") return SourceSpec::uniform_drag();
  throw Error(ErrorCode::UnsupportedSource, "unknown source kind: " + kind);
}

json to_json(const Scenario& s) {
  json j = to_json(s.data);
  j["source"] = to_json(s.source);
  j["t_max"] = s.t_max;
  j["fan"] = json{{"curves", s.fan.curves}, {"dt", s.fan.dt}};
  return j;
}

Scenario scenario_from_json(const json& j) {
  Scenario s{data_from_json(j), source_from_json(j.at("source")), 4.0, {}};
  if (j.contains("t_max")) s.t_max = j.at("t_max").get<double>();
  if (!(s.t_max > 0.0))
    throw std::invalid_argument("scenario t_max must be positive");
  if (j.contains("fan")) {
    const json& f = j.at("fan");
    if (f.contains("curves")) s.fan.curves = f.at("curves").get<int>();
    if (f.contains("dt")) s.fan.dt = f.at("dt").get<double>();
  }
  if (s.fan.curves < 1 || s.fan.dt < 0.0)
    throw std::invalid_argument("scenario fan options must be positive");
  validate(s.data, s.source);
  return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open scenario file: " + path.string());
  json j;
  in >> j;
  return scenario_from_json(j);
}

json to_json(const critical::CaseReport& report) {
  json times = json::object();
  for (const auto& [name, value] : report.times) times[name] = value;
  return json{{"regime", to_string(report.regime)},
              {"panel", to_string(report.panel)},
              {"times", times},
              {"death", report.death ? json(*report.death) : json(nullptr)},
              {"vacuum_after", report.vacuum_after}};
}

json to_json(const weak::Report& report) {
  json bumps = json::array();
  for (const auto& b : report.bumps) {
    bumps.push_back(json{{"center", {b.phi.cx, b.phi.ct}},
                         {"radii", {b.phi.rx, b.phi.rt}},
                         {"residual_velocity", b.r_velocity},
                         {"residual_mass", b.r_mass},
                         {"threshold", b.threshold},
                         {"pass", b.pass}});
  }
  return json{{"threshold_rel", report.threshold_rel},
              {"bumps", bumps},
              {"pass", report.pass}};
}

}  // namespace deltashock::scenario
