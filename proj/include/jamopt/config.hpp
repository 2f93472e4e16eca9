#pragma once

#include "jamopt/relative_dynamics.hpp"

#include <json.hpp>

#include <filesystem>
#include <optional>
#include <string>

namespace jamopt {

// Full mission description as read from a JSON config file. Positions are
// stored in SI internally; the file may give the initial position in either
// kilometers (initial_position_km) or meters (initial_position_m), exactly
// one of the two.
struct ScenarioConfig {
  double altitude_km = 0.0;          // defender altitude above the station
  std::optional<double> n_rad_s;     // explicit orbital rate override
  double mass_kg = 0.0;
  Vec3 initial_position_m = Vec3::Zero();
  Vec3 initial_velocity_m_s = Vec3::Zero();
  double frequency_hz = 0.0;         // uplink carrier
  double bandwidth_hz = 0.0;
  double noise_temperature_k = 0.0;
  double P_a_w = 0.0;                // jammer transmit power
  double G_a = 0.0;                  // jammer antenna gain
  double G_s = 0.0;                  // ground-station antenna gain
  double P_s_w = 0.0;                // ground-station transmit power
  double peak_gain = 0.0;            // defender receive-pattern peak
  double T_s = 0.0;                  // stage boundary
  double Tprime_s = 0.0;             // window end
  double r_r = 0.0;                  // stage-1 control weight scalar (R = r_r I)
  double a_r = 0.0;                  // stage-1 terminal SINR weight
  double r_c = 0.0;                  // stage-2 control weight scalar (R = r_c I)
  double a_c = 0.0;                  // stage-2 running SINR weight
  double step_s = 1.0;               // integrator step
  int multistart = 24;               // stage-1 multistart cap
};

// Parse a JSON document. Unknown fields are rejected, as are missing
// required fields and type mismatches; messages name the field.
ScenarioConfig parse_config(const std::string& json_text);

// Read and parse a config file. Unreadable file -> IoError.
ScenarioConfig load_config(const std::filesystem::path& file);

// Range checks beyond parsing (positivity, window ordering, proximity
// guard). Throws ConfigError naming the field.
void validate(const ScenarioConfig& cfg);

// Canonical JSON form of a parsed config: every field explicit, position in
// meters. Feeding this back through parse_config reproduces the exact same
// internal state, so a run is reproducible from its own summary echo.
nlohmann::json echo_config(const ScenarioConfig& cfg);

// The scenario the repository's bundled config and the built-in validation
// suite use: a 550 km circular defender orbit, a 300 kg jammer starting
// 2 km above / 15 km behind, a 14 GHz / 500 MHz uplink, and a 3000 s
// reposition followed by a 600 s jamming window.
ScenarioConfig reference_config();

}  // namespace jamopt
