#include "jamopt/config.hpp"

#include "jamopt/errors.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace jamopt {
namespace {

using nlohmann::json;

double require_number(const json& j, const std::string& field) {
  const auto it = j.find(field);
  if (it == j.end()) {
    throw ConfigError("missing required config field: " + field);
  }
  if (!it->is_number()) {
    throw ConfigError("config field must be a number: " + field);
  }
  const double value = it->get<double>();
  if (!std::isfinite(value)) {
    throw ConfigError("config field must be finite: " + field);
  }
  return value;
}

Vec3 require_vec3(const json& j, const std::string& field) {
  const auto it = j.find(field);
  if (it == j.end()) {
    throw ConfigError("missing required config field: " + field);
  }
  if (!it->is_array() || it->size() != 3) {
    throw ConfigError("config field must be a 3-element array: " + field);
  }
  Vec3 v;
  for (int i = 0; i < 3; ++i) {
    const json& e = (*it)[static_cast<std::size_t>(i)];
    if (!e.is_number()) {
      throw ConfigError("config field must hold numbers: " + field);
    }
    v(i) = e.get<double>();
    if (!std::isfinite(v(i))) {
      throw ConfigError("config field must be finite: " + field);
    }
  }
  return v;
}

void check_positive(double value, const std::string& field) {
  if (!(value > 0.0)) {
    throw ConfigError("config field must be positive: " + field);
  }
}

const std::set<std::string>& known_fields() {
  static const std::set<std::string> fields = {
      "altitude_km",      "n_rad_s",
      "mass_kg",          "initial_position_km",
      "initial_position_m", "initial_velocity_m_s",
      "frequency_hz",     "bandwidth_hz",
      "noise_temperature_k", "P_a_w",
      "G_a",              "G_s",
      "P_s_w",            "peak_gain",
      "T_s",              "Tprime_s",
      "r_r",              "a_r",
      "r_c",              "a_c",
      "step_s",           "multistart",
  };
  return fields;
}

}  // namespace

ScenarioConfig parse_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    // parse_error for malformed text, out_of_range for number overflow
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) {
    throw ConfigError("config must be a JSON object");
  }
  for (const auto& item : j.items()) {
    if (known_fields().count(item.key()) == 0) {
      throw ConfigError("unknown config field: " + item.key());
    }
  }

  ScenarioConfig cfg;
  cfg.altitude_km = require_number(j, "altitude_km");
  if (j.contains("n_rad_s")) {
    cfg.n_rad_s = require_number(j, "n_rad_s");
  }
  cfg.mass_kg = require_number(j, "mass_kg");

  const bool has_km = j.contains("initial_position_km");
  const bool has_m = j.contains("initial_position_m");
  if (has_km == has_m) {
    throw ConfigError(
        "config must give exactly one of initial_position_km and "
        "initial_position_m");
  }
  cfg.initial_position_m = has_km
                               ? Vec3(1000.0 * require_vec3(j, "initial_position_km"))
                               : require_vec3(j, "initial_position_m");
  cfg.initial_velocity_m_s = require_vec3(j, "initial_velocity_m_s");

  cfg.frequency_hz = require_number(j, "frequency_hz");
  cfg.bandwidth_hz = require_number(j, "bandwidth_hz");
  cfg.noise_temperature_k = require_number(j, "noise_temperature_k");
  cfg.P_a_w = require_number(j, "P_a_w");
  cfg.G_a = require_number(j, "G_a");
  cfg.G_s = require_number(j, "G_s");
  cfg.P_s_w = require_number(j, "P_s_w");
  cfg.peak_gain = require_number(j, "peak_gain");
  cfg.T_s = require_number(j, "T_s");
  cfg.Tprime_s = require_number(j, "Tprime_s");
  cfg.r_r = require_number(j, "r_r");
  cfg.a_r = require_number(j, "a_r");
  cfg.r_c = require_number(j, "r_c");
  cfg.a_c = require_number(j, "a_c");
  if (j.contains("step_s")) {
    cfg.step_s = require_number(j, "step_s");
  }
  if (j.contains("multistart")) {
    if (!j["multistart"].is_number_integer()) {
      throw ConfigError("config field must be an integer: multistart");
    }
    cfg.multistart = j["multistart"].get<int>();
  }
  return cfg;
}

ScenarioConfig load_config(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) {
    throw IoError("cannot read config file: " + file.string());
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

void validate(const ScenarioConfig& cfg) {
  check_positive(cfg.altitude_km, "altitude_km");
  if (cfg.n_rad_s) {
    check_positive(*cfg.n_rad_s, "n_rad_s");
  }
  check_positive(cfg.mass_kg, "mass_kg");
  check_positive(cfg.frequency_hz, "frequency_hz");
  check_positive(cfg.bandwidth_hz, "bandwidth_hz");
  check_positive(cfg.noise_temperature_k, "noise_temperature_k");
  check_positive(cfg.P_a_w, "P_a_w");
  check_positive(cfg.G_a, "G_a");
  check_positive(cfg.G_s, "G_s");
  check_positive(cfg.P_s_w, "P_s_w");
  check_positive(cfg.peak_gain, "peak_gain");
  check_positive(cfg.T_s, "T_s");
  if (!(cfg.Tprime_s > cfg.T_s)) {
    throw ConfigError("config field Tprime_s must exceed T_s");
  }
  check_positive(cfg.r_r, "r_r");
  check_positive(cfg.r_c, "r_c");
  if (cfg.a_r < 0.0) {
    throw ConfigError("config field must be nonnegative: a_r");
  }
  if (cfg.a_c < 0.0) {
    throw ConfigError("config field must be nonnegative: a_c");
  }
  check_positive(cfg.step_s, "step_s");
  if (cfg.multistart < 1) {
    throw ConfigError("config field must be at least 1: multistart");
  }
  if (cfg.initial_position_m.norm() <= 10.0) {
    throw ConfigError(
        "config field initial_position must start outside the 10 m proximity "
        "guard");
  }
}

nlohmann::json echo_config(const ScenarioConfig& cfg) {
  json j;
  j["altitude_km"] = cfg.altitude_km;
  if (cfg.n_rad_s) {
    j["n_rad_s"] = *cfg.n_rad_s;
  }
  j["mass_kg"] = cfg.mass_kg;
  j["initial_position_m"] = {cfg.initial_position_m.x(),
                             cfg.initial_position_m.y(),
                             cfg.initial_position_m.z()};
  j["initial_velocity_m_s"] = {cfg.initial_velocity_m_s.x(),
                               cfg.initial_velocity_m_s.y(),
                               cfg.initial_velocity_m_s.z()};
  j["frequency_hz"] = cfg.frequency_hz;
  j["bandwidth_hz"] = cfg.bandwidth_hz;
  j["noise_temperature_k"] = cfg.noise_temperature_k;
  j["P_a_w"] = cfg.P_a_w;
  j["G_a"] = cfg.G_a;
  j["G_s"] = cfg.G_s;
  j["P_s_w"] = cfg.P_s_w;
  j["peak_gain"] = cfg.peak_gain;
  j["T_s"] = cfg.T_s;
  j["Tprime_s"] = cfg.Tprime_s;
  j["r_r"] = cfg.r_r;
  j["a_r"] = cfg.a_r;
  j["r_c"] = cfg.r_c;
  j["a_c"] = cfg.a_c;
  j["step_s"] = cfg.step_s;
  j["multistart"] = cfg.multistart;
  return j;
}

ScenarioConfig reference_config() {
  ScenarioConfig cfg;
  cfg.altitude_km = 550.0;
  cfg.mass_kg = 300.0;
  cfg.initial_position_m = Vec3(2000.0, -15000.0, 0.0);
  cfg.initial_velocity_m_s = Vec3(0.0, -4.0, 0.0);
  cfg.frequency_hz = 14.0e9;
  cfg.bandwidth_hz = 500.0e6;
  cfg.noise_temperature_k = 250.0;
  cfg.P_a_w = 1.0;
  cfg.G_a = 1000.0;
  cfg.G_s = 1000.0;
  cfg.P_s_w = 10.0;
  cfg.peak_gain = 10000.0;
  cfg.T_s = 3000.0;
  cfg.Tprime_s = 3600.0;
  cfg.r_r = 1000.0 / 3000.0;
  cfg.a_r = 1.0;
  cfg.r_c = 1000.0 / 600.0;
  cfg.a_c = 100.0 / 600.0;
  cfg.step_s = 1.0;
  cfg.multistart = 24;
  return cfg;
}

}  // namespace jamopt
