#include "jamopt/report_io.hpp"

#include "jamopt/errors.hpp"

#include <cstdio>
#include <fstream>
#include <system_error>

namespace jamopt {
namespace {

using nlohmann::json;

json vec_to_json(const Vec3& v) {
  return json::array({v.x(), v.y(), v.z()});
}

json vec_to_json(const Vec6& v) {
  json arr = json::array();
  for (int i = 0; i < 6; ++i) {
    arr.push_back(v(i));
  }
  return arr;
}

void write_text_file(const std::filesystem::path& path,
                     const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw IoError("cannot open for writing: " + path.string());
  }
  out << text;
  if (!out) {
    throw IoError("write failed: " + path.string());
  }
}

}  // namespace

std::string format_full(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

std::string trajectory_csv(const MissionReport& rep) {
  std::string out = "t,x,y,z,vx,vy,vz,ux,uy,uz,stage\n";
  for (std::size_t i = 0; i < rep.t.size(); ++i) {
    out += format_full(rep.t[i]);
    for (int k = 0; k < 6; ++k) {
      out += ',';
      out += format_full(rep.w[i](k));
    }
    for (int k = 0; k < 3; ++k) {
      out += ',';
      out += format_full(rep.u[i](k));
    }
    out += ',';
    out += std::to_string(rep.stage[i]);
    out += '\n';
  }
  return out;
}

std::string comms_csv(const MissionReport& rep) {
  std::string out = "t,sinr_db,gain_db,path_loss_db,distance_m,angle_deg\n";
  for (std::size_t i = 0; i < rep.t.size(); ++i) {
    out += format_full(rep.t[i]);
    out += ',';
    out += format_full(rep.sinr_db[i]);
    out += ',';
    out += format_full(rep.gain_db[i]);
    out += ',';
    out += format_full(rep.path_loss_db[i]);
    out += ',';
    out += format_full(rep.distance_m[i]);
    out += ',';
    out += format_full(rep.angle_deg[i]);
    out += '\n';
  }
  return out;
}

json summary_json(const MissionReport& rep, const ScenarioConfig& cfg) {
  json j;
  j["schema_version"] = 1;
  j["total_delta_v_m_s"] = rep.total_delta_v;

  const bool has_stage1 = !rep.stage1.trajectory.empty();
  const bool has_stage2 = !rep.stage2.trajectory.empty();

  if (has_stage1) {
    const RepositionSolution& s1 = rep.stage1;
    json s;
    s["delta_v_m_s"] = s1.delta_v;
    s["total_cost"] = s1.total_cost;
    s["energy_cost"] = s1.energy_cost;
    s["residual_norm"] = s1.residual_norm;
    s["mu"] = vec_to_json(s1.mu);
    s["p_f_m"] = vec_to_json(s1.p_f);
    s["v_f_m_s"] = vec_to_json(s1.v_f);
    s["newton_iterations"] = s1.newton_iterations;
    s["roots_found"] = s1.roots_found;
    s["drift_solution"] = s1.drift_solution;
    j["stage1"] = s;
  }
  if (has_stage2) {
    const CruiseSolution& s2 = rep.stage2;
    json s;
    s["delta_v_m_s"] = s2.delta_v;
    s["total_cost"] = s2.total_cost;
    s["terminal_costate_norm"] = s2.terminal_costate_norm;
    s["lambda0"] = vec_to_json(s2.lambda0);
    s["newton_iterations"] = s2.newton_iterations;
    s["used_multiple_shooting"] = s2.used_multiple_shooting;
    s["dead_zone_samples"] = s2.dead_zone_samples;
    j["stage2"] = s;
  }

  json window;
  window["start_s"] = cfg.T_s;
  window["end_s"] = cfg.Tprime_s;
  window["min_sinr_db"] = rep.min_sinr_db_window;
  window["max_sinr_db"] = rep.max_sinr_db_window;
  j["window"] = window;

  if (!rep.t.empty()) {
    json geometry;
    geometry["initial_distance_m"] = rep.distance_m.front();
    geometry["final_distance_m"] = rep.distance_m.back();
    geometry["distance_ratio"] = rep.distance_m.back() / rep.distance_m.front();
    geometry["final_angle_deg"] = rep.angle_deg.back();
    j["geometry"] = geometry;
  }

  json derived;
  derived["n_rad_s"] = rep.orbit.n;
  derived["lambda_m"] = rep.comms.lambda;
  derived["sigma2_w"] = rep.comms.sigma2;
  derived["numerator_bound_w"] = rep.comms.P;
  j["derived"] = derived;

  j["config"] = echo_config(cfg);
  return j;
}

void write_output_bundle(const std::filesystem::path& out_dir,
                         const MissionReport& rep, const ScenarioConfig& cfg) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec || !std::filesystem::is_directory(out_dir)) {
    throw IoError("cannot create output directory: " + out_dir.string());
  }
  write_text_file(out_dir / "trajectory.csv", trajectory_csv(rep));
  write_text_file(out_dir / "comms.csv", comms_csv(rep));
  write_text_file(out_dir / "summary.json", summary_json(rep, cfg).dump(2) + "\n");
}

}  // namespace jamopt
