#pragma once

#include "jamopt/link_budget.hpp"
#include "jamopt/relative_dynamics.hpp"

#include <utility>
#include <vector>

namespace jamopt {

// Stage 2: hold the jamming geometry over [T, T'] while trading the running
// SINR bound against control energy. The necessary conditions couple the
// state with a six-dimensional costate that must vanish at T'.
struct CruiseProblem {
  Vec6 wT;              // state at the window start (stage-1 handoff)
  double T = 0.0;       // window start, s
  double Tprime = 0.0;  // window end, s
  Mat3 R_c;             // control weight, SPD
  double a_c = 0.0;     // running SINR weight, >= 0
  CommsParams comms;
  OrbitParams orbit;
};

struct CruiseSample {
  double t;
  Vec6 w;
  Vec6 lambda;
  Vec3 u;  // thrust, N; always -(1/m) R_c^{-1} lambda_v
};

enum class ShootingMethod {
  single_then_multiple,  // single shooting, multiple shooting as fallback
  single_only,
  multiple_only,
};

struct CruiseSolution {
  Vec6 lambda0;  // solved costate at the window start
  std::vector<CruiseSample> trajectory;
  double terminal_costate_norm = 0.0;
  double total_cost = 0.0;  // integral of control energy + a_c * SINR bound
  double delta_v = 0.0;     // m/s
  std::vector<double> hamiltonian;  // one value per trajectory sample
  int newton_iterations = 0;
  bool used_multiple_shooting = false;
  int dead_zone_samples = 0;  // samples with the jammer behind the antenna plane
};

// Right-hand side of the costate flow: -A^T lambda minus the running-cost
// gradient stacked over the position block (the velocity block of the
// forcing is identically zero). `t` only matters when a numerator hook is
// installed on the comms parameters.
Vec6 costate_derivative(const Vec6& w, const Vec6& lambda,
                        const CruiseProblem& prob, double t = 0.0);

// Integrate the coupled state/costate system from T to T' with the
// stationarity control substituted in; returns the terminal costate and the
// sampled sweep. Throws SolverError if the state leaves the finite range or
// the separation drops below the 10 m proximity guard.
std::pair<Vec6, std::vector<CruiseSample>> shoot(const Vec6& lambda0,
                                                 const CruiseProblem& prob,
                                                 double step);

// Solve the boundary value problem: Newton on lambda0 -> lambda(T') starting
// from the coasting costate lambda0 = 0, falling back to multiple shooting
// over 10 uniform segments when single shooting fails.
CruiseSolution solve_cruise(const CruiseProblem& prob, double step = 1.0,
                            ShootingMethod method = ShootingMethod::single_then_multiple);

}  // namespace jamopt
