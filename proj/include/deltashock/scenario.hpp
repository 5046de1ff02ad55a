#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "deltashock/critical.hpp"
#include "deltashock/model.hpp"
#include "deltashock/weak_residual.hpp"

namespace deltashock::scenario {

struct FanOptions {
  int curves = 12;
  double dt = 0.0;  // 0: derived as t_max / 2000
};

struct Scenario {
  RiemannData data;
  SourceSpec source;
  double t_max = 4.0;
  FanOptions fan;
};

nlohmann::json to_json(const RiemannData& data);
RiemannData data_from_json(const nlohmann::json& j);

// General sources are not serializable and throw UnsupportedSource.
nlohmann::json to_json(const SourceSpec& source);
SourceSpec source_from_json(const nlohmann::json& j);

nlohmann::json to_json(const Scenario& s);
Scenario scenario_from_json(const nlohmann::json& j);
Scenario load_scenario(const std::filesystem::path& path);

nlohmann::json to_json(const critical::CaseReport& report);
nlohmann::json to_json(const weak::Report& report);

}  // namespace deltashock::scenario
