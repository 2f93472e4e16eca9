#pragma once

#include "jamopt/config.hpp"
#include "jamopt/cruise.hpp"
#include "jamopt/link_budget.hpp"
#include "jamopt/relative_dynamics.hpp"
#include "jamopt/reposition.hpp"

#include <utility>
#include <vector>

namespace jamopt {

// A mission report carries the per-stage solutions plus flattened series on
// one common time grid covering the run. The row at the stage boundary t = T
// belongs to stage 2 (its state is the handoff state, its control is the
// cruise control); stage-1 rows cover [0, T).
struct MissionReport {
  RepositionSolution stage1;  // empty trajectory for cruise-only runs
  CruiseSolution stage2;      // empty trajectory for reposition-only runs

  std::vector<double> t;
  std::vector<Vec6> w;
  std::vector<Vec3> u;
  std::vector<int> stage;          // 1 or 2 per row
  std::vector<double> sinr_db;
  std::vector<double> gain_db;     // -inf where the reception gain is zero
  std::vector<double> path_loss_db;
  std::vector<double> distance_m;
  std::vector<double> angle_deg;   // reception angle in [0, 180]

  double total_delta_v = 0.0;
  double min_sinr_db_window = 0.0;  // over rows with t >= window start
  double max_sinr_db_window = 0.0;

  CommsParams comms;  // derived link parameters the series were computed with
  OrbitParams orbit;
};

// Derive the solver-facing problem pair from a validated config: orbital
// rate from the altitude (unless overridden), wavelength from the carrier,
// thermal noise from temperature and bandwidth, and the numerator bound from
// the station parameters with the defender directly overhead. The cruise
// problem's initial state is filled by run_mission after stage 1.
std::pair<RepositionProblem, CruiseProblem> build_problems(
    const ScenarioConfig& cfg);

// Stage 1 over [0, T], handoff at T, stage 2 over [T, T'].
MissionReport run_mission(const ScenarioConfig& cfg);

// Single-stage runs for the CLI: reposition covers [0, T] (the boundary row
// included, since there is no stage 2 to own it); cruise treats the config's
// initial state as the window-start state and covers [T, T'].
MissionReport run_reposition_stage(const ScenarioConfig& cfg);
MissionReport run_cruise_stage(const ScenarioConfig& cfg);

}  // namespace jamopt
