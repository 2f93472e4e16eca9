#pragma once

#include "jamopt/link_budget.hpp"
#include "jamopt/relative_dynamics.hpp"

#include <vector>

namespace jamopt {

// Stage 1: move, over [0, T], from w0 to wherever the weighted sum of control
// energy and the terminal SINR bound is smallest.
struct RepositionProblem {
  Vec6 w0;           // state at t = 0
  double T = 0.0;    // maneuver horizon, s
  Mat3 R_r;          // control weight, SPD
  double a_r = 0.0;  // terminal SINR weight, >= 0
  CommsParams comms;
  OrbitParams orbit;
};

struct RepositionSolution {
  Vec3 mu;         // terminal position costate
  Vec3 p_f, v_f;   // terminal state from the algebraic system
  std::vector<StateSample> trajectory;
  double total_cost = 0.0;     // control energy + a_r * terminal SINR bound
  double energy_cost = 0.0;    // 1/2 integral of u^T R_r u (closed form)
  double residual_norm = 0.0;  // stationarity residual at mu
  double delta_v = 0.0;        // m/s
  int newton_iterations = 0;   // iterations spent on the winning start
  int roots_found = 0;         // distinct converged roots over the multistart grid
  bool drift_solution = false; // mu ~ 0 with the drift endpoint in the dead zone
};

// Stationarity defect of a candidate terminal costate: the terminal state is
// reconstructed algebraically from mu (drift minus Gramian correction) and
// the returned vector is mu minus the terminal-cost gradient there. Zero at
// an optimal mu.
Vec3 terminal_costate_residual(const Vec3& mu, const RepositionProblem& prob);

// Damped-Newton root find on terminal_costate_residual over a deterministic
// multistart grid; among converged roots the lowest-cost one wins (ties go to
// the smaller |mu|). `multistart` caps how many grid starts are tried; `step`
// is the RK4 sampling interval of the returned trajectory.
RepositionSolution solve_reposition(const RepositionProblem& prob,
                                    int multistart = 24, double step = 1.0);

// The closed-form optimal thrust at time t in [0, T] for a solved problem.
Vec3 reposition_control(double t, const RepositionSolution& sol,
                        const RepositionProblem& prob);

}  // namespace jamopt
