#include "jamopt/config.hpp"
#include "jamopt/errors.hpp"
#include "jamopt/link_budget.hpp"
#include "jamopt/mission.hpp"
#include "jamopt/reposition.hpp"

#include <doctest.h>

#include <cmath>
#include <stdexcept>

using namespace jamopt;

namespace {

RepositionProblem reference_problem() {
  auto [rp, cp] = build_problems(reference_config());
  (void)cp;
  return rp;
}

}  // namespace

TEST_SUITE("reposition") {

TEST_CASE("reference scenario converges to the known root") {
  const RepositionProblem prob = reference_problem();
  const RepositionSolution sol = solve_reposition(prob, 24, 1.0);

  // First-order optimality.
  CHECK(sol.residual_norm < 1e-8 * (1.0 + sol.mu.norm()));
  CHECK(terminal_costate_residual(sol.mu, prob).norm() ==
        doctest::Approx(sol.residual_norm).epsilon(1e-9));

  // Pinned solution values for the bundled scenario.
  CHECK(sol.mu(0) == doctest::Approx(1.275101600018847e-3).epsilon(1e-9));
  CHECK(sol.mu(1) == doctest::Approx(-2.435783167672044e-4).epsilon(1e-9));
  CHECK(sol.mu(2) == 0.0);
  CHECK(sol.total_cost == doctest::Approx(1.8159755694970885).epsilon(1e-12));
  CHECK(sol.energy_cost == doctest::Approx(0.8054159760046462).epsilon(1e-12));
  CHECK(sol.delta_v == doctest::Approx(0.3322334228880522).epsilon(1e-9));
  CHECK(sol.p_f(0) == doctest::Approx(-1554.0843349241986).epsilon(1e-9));
  CHECK(sol.p_f(1) == doctest::Approx(-16417.974415910965).epsilon(1e-9));
  CHECK_FALSE(sol.drift_solution);
  CHECK(sol.roots_found >= 1);

  // The endpoint sits in front of the defender's antenna plane.
  CHECK(sol.p_f(0) < 0.0);
  CHECK(reception_angle_cos(sol.p_f) > 0.0);

  // Integrated endpoint agrees with the algebraic one.
  Vec6 wf;
  wf << sol.p_f, sol.v_f;
  CHECK((sol.trajectory.back().w - wf).norm() <= 1e-5 * wf.norm());
  CHECK(sol.trajectory.size() == 3001);
}

TEST_CASE("solver output is deterministic") {
  const RepositionProblem prob = reference_problem();
  const RepositionSolution a = solve_reposition(prob, 24, 1.0);
  const RepositionSolution b = solve_reposition(prob, 24, 1.0);
  CHECK(a.mu == b.mu);
  CHECK(a.total_cost == b.total_cost);
  CHECK(a.delta_v == b.delta_v);
}

TEST_CASE("the root does not depend on the output step") {
  const RepositionProblem prob = reference_problem();
  const RepositionSolution coarse = solve_reposition(prob, 24, 1.0);
  const RepositionSolution fine = solve_reposition(prob, 24, 0.5);
  CHECK(coarse.mu == fine.mu);
  CHECK(fine.trajectory.size() == 6001);
  CHECK(fine.delta_v == doctest::Approx(coarse.delta_v).epsilon(1e-6));
}

TEST_CASE("control law reproduces the stored trajectory inputs") {
  const RepositionProblem prob = reference_problem();
  const RepositionSolution sol = solve_reposition(prob, 24, 1.0);
  for (const std::size_t i : {std::size_t{0}, std::size_t{1500}, std::size_t{3000}}) {
    const StateSample& s = sol.trajectory[i];
    CHECK((reposition_control(s.t, sol, prob) - s.u).norm() <=
          1e-14 * (1.0 + s.u.norm()));
  }
  CHECK_THROWS_AS(reposition_control(-0.5, sol, prob), std::out_of_range);
  CHECK_THROWS_AS(reposition_control(prob.T + 0.5, sol, prob),
                  std::out_of_range);
}

TEST_CASE("zero terminal weight reduces to pure drift") {
  RepositionProblem prob = reference_problem();
  prob.a_r = 0.0;
  const RepositionSolution sol = solve_reposition(prob, 8, 10.0);
  CHECK(sol.mu.norm() == 0.0);
  CHECK(sol.total_cost == 0.0);
  CHECK(sol.delta_v == 0.0);
  for (const StateSample& s : sol.trajectory) {
    CHECK(s.u.norm() == 0.0);
  }
  const Vec6 drift = state_transition(prob.T, prob.orbit) * prob.w0;
  CHECK((sol.trajectory.back().w - drift).norm() <= 1e-6 * drift.norm());
}

TEST_CASE("a drift endpoint in the dead zone admits the trivial root") {
  RepositionProblem prob = reference_problem();
  prob.w0 = Vec6::Zero();
  prob.w0(0) = 2000.0;  // drifts to positive x, behind the antenna plane

  // mu = 0 solves the stationarity condition exactly there.
  CHECK(terminal_costate_residual(Vec3::Zero(), prob).norm() == 0.0);

  // The solver may still surface a cheaper interior root via multistart, but
  // never anything worse than doing nothing.
  const RepositionSolution sol = solve_reposition(prob, 24, 10.0);
  const Vec6 drift = state_transition(prob.T, prob.orbit) * prob.w0;
  const double drift_cost =
      prob.a_r * sinr_upper_bound(drift.head<3>(), prob.comms.at_time(prob.T));
  CHECK(sol.residual_norm < 1e-8 * (1.0 + sol.mu.norm()));
  CHECK(sol.total_cost <= drift_cost + 1e-9);

  // With a negligible terminal weight nothing can beat coasting, and the
  // solver reports the degenerate optimum explicitly.
  RepositionProblem faint = prob;
  faint.a_r = 1e-30;
  const RepositionSolution coast = solve_reposition(faint, 8, 10.0);
  CHECK(coast.mu.norm() <= 1e-12);
  CHECK(coast.drift_solution);
  CHECK(coast.delta_v == 0.0);
}

TEST_CASE("invalid problems are rejected up front") {
  RepositionProblem bad_T = reference_problem();
  bad_T.T = 0.0;
  CHECK_THROWS_AS(solve_reposition(bad_T, 4, 1.0), std::invalid_argument);

  RepositionProblem bad_weight = reference_problem();
  bad_weight.a_r = -1.0;
  CHECK_THROWS_AS(solve_reposition(bad_weight, 4, 1.0),
                  std::invalid_argument);

  RepositionProblem bad_R = reference_problem();
  bad_R.R_r = -Mat3::Identity();
  CHECK_THROWS_AS(solve_reposition(bad_R, 4, 1.0), std::invalid_argument);
}

}  // TEST_SUITE
