#include "jamopt/mission.hpp"

#include "jamopt/constants.hpp"
#include "jamopt/errors.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace jamopt {
namespace {

void append_row(MissionReport& rep, double t, const Vec6& w, const Vec3& u,
                int stage) {
  rep.t.push_back(t);
  rep.w.push_back(w);
  rep.u.push_back(u);
  rep.stage.push_back(stage);

  const Vec3 p = w.head<3>();
  const double r = p.norm();
  const double c = reception_angle_cos(p);
  rep.sinr_db.push_back(to_db(sinr_upper_bound(p, rep.comms)));
  rep.gain_db.push_back(to_db(rep.comms.pattern.gain(c)));
  rep.path_loss_db.push_back(to_db(free_space_path_loss(r, rep.comms.lambda)));
  rep.distance_m.push_back(r);
  rep.angle_deg.push_back(std::acos(c) * 180.0 / std::numbers::pi);
}

void finish_window_stats(MissionReport& rep, double window_start) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (std::size_t i = 0; i < rep.t.size(); ++i) {
    if (rep.t[i] >= window_start) {
      lo = std::min(lo, rep.sinr_db[i]);
      hi = std::max(hi, rep.sinr_db[i]);
    }
  }
  rep.min_sinr_db_window = lo;
  rep.max_sinr_db_window = hi;
}

}  // namespace

std::pair<RepositionProblem, CruiseProblem> build_problems(
    const ScenarioConfig& cfg) {
  validate(cfg);

  OrbitParams orbit;
  const double altitude_m = cfg.altitude_km * 1000.0;
  const double semi_major = constants::earth_radius_m + altitude_m;
  orbit.n = cfg.n_rad_s
                ? *cfg.n_rad_s
                : std::sqrt(constants::mu_earth /
                            (semi_major * semi_major * semi_major));
  orbit.m = cfg.mass_kg;

  CommsParams comms;
  comms.pattern = AntennaPattern::cosine_squared(cfg.peak_gain);
  comms.P_a = cfg.P_a_w;
  comms.G_a = cfg.G_a;
  comms.lambda = constants::speed_of_light / cfg.frequency_hz;
  comms.sigma2 = noise_power(cfg.noise_temperature_k, cfg.bandwidth_hz);
  // Numerator bound: the station transmits from directly below the defender,
  // so the friendly product is bounded by boresight gain over the altitude
  // path.
  comms.P = cfg.P_s_w * cfg.G_s * comms.pattern.gain(1.0) *
            free_space_path_loss(altitude_m, comms.lambda);

  RepositionProblem rp;
  rp.w0 << cfg.initial_position_m, cfg.initial_velocity_m_s;
  rp.T = cfg.T_s;
  rp.R_r = cfg.r_r * Mat3::Identity();
  rp.a_r = cfg.a_r;
  rp.comms = comms;
  rp.orbit = orbit;

  CruiseProblem cp;
  cp.wT = Vec6::Zero();  // filled from the stage-1 handoff
  cp.T = cfg.T_s;
  cp.Tprime = cfg.Tprime_s;
  cp.R_c = cfg.r_c * Mat3::Identity();
  cp.a_c = cfg.a_c;
  cp.comms = comms;
  cp.orbit = orbit;
  return {rp, cp};
}

MissionReport run_mission(const ScenarioConfig& cfg) {
  auto [rp, cp] = build_problems(cfg);

  MissionReport rep;
  rep.comms = rp.comms;
  rep.orbit = rp.orbit;

  try {
    rep.stage1 = solve_reposition(rp, cfg.multistart, cfg.step_s);
  } catch (const SolverError& e) {
    throw SolverError(std::string("stage 1 (reposition): ") + e.what());
  }

  // Hand the integrated endpoint to stage 2 so the flattened series is
  // continuous by construction.
  cp.wT = rep.stage1.trajectory.back().w;
  try {
    rep.stage2 = solve_cruise(cp, cfg.step_s);
  } catch (const SolverError& e) {
    throw SolverError(std::string("stage 2 (cruise): ") + e.what());
  }

  for (const StateSample& s : rep.stage1.trajectory) {
    if (s.t < rp.T) {
      append_row(rep, s.t, s.w, s.u, 1);
    }
  }
  for (const CruiseSample& s : rep.stage2.trajectory) {
    append_row(rep, s.t, s.w, s.u, 2);
  }

  rep.total_delta_v = rep.stage1.delta_v + rep.stage2.delta_v;
  finish_window_stats(rep, cp.T);
  return rep;
}

MissionReport run_reposition_stage(const ScenarioConfig& cfg) {
  auto [rp, cp] = build_problems(cfg);
  (void)cp;

  MissionReport rep;
  rep.comms = rp.comms;
  rep.orbit = rp.orbit;
  rep.stage1 = solve_reposition(rp, cfg.multistart, cfg.step_s);
  for (const StateSample& s : rep.stage1.trajectory) {
    append_row(rep, s.t, s.w, s.u, 1);
  }
  rep.total_delta_v = rep.stage1.delta_v;
  finish_window_stats(rep, rp.T);
  return rep;
}

MissionReport run_cruise_stage(const ScenarioConfig& cfg) {
  auto [rp, cp] = build_problems(cfg);
  (void)rp;

  MissionReport rep;
  rep.comms = cp.comms;
  rep.orbit = cp.orbit;
  cp.wT << cfg.initial_position_m, cfg.initial_velocity_m_s;
  rep.stage2 = solve_cruise(cp, cfg.step_s);
  for (const CruiseSample& s : rep.stage2.trajectory) {
    append_row(rep, s.t, s.w, s.u, 2);
  }
  rep.total_delta_v = rep.stage2.delta_v;
  finish_window_stats(rep, cp.T);
  return rep;
}

}  // namespace jamopt
