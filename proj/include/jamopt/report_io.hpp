#pragma once

#include "jamopt/config.hpp"
#include "jamopt/mission.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>

namespace jamopt {

// 17-significant-digit decimal form of a double (printf %.17g); enough
// digits to round-trip through strtod bit-exactly. Infinities print as
// inf/-inf.
std::string format_full(double value);

// CSV bodies. Headers are stable:
//   trajectory: t,x,y,z,vx,vy,vz,ux,uy,uz,stage
//   comms:      t,sinr_db,gain_db,path_loss_db,distance_m,angle_deg
std::string trajectory_csv(const MissionReport& rep);
std::string comms_csv(const MissionReport& rep);

// Machine-readable run summary: delta-v, per-stage costs and residuals,
// window statistics, derived parameters, diagnostics, and a canonical echo
// of the effective config (re-running the echo reproduces the CSVs byte for
// byte).
nlohmann::json summary_json(const MissionReport& rep,
                            const ScenarioConfig& cfg);

// Write trajectory.csv, comms.csv, and summary.json into out_dir (created if
// missing). Throws IoError when the directory or files cannot be written.
void write_output_bundle(const std::filesystem::path& out_dir,
                         const MissionReport& rep, const ScenarioConfig& cfg);

}  // namespace jamopt
