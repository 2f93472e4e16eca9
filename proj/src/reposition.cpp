#include "jamopt/reposition.hpp"

#include "jamopt/errors.hpp"
#include "solver_common.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace jamopt {
namespace {

// Quantities that depend only on the problem, shared by every residual
// evaluation: the drift endpoint, the weighted Gramian, and the comms
// parameters resolved at the terminal time.
struct Setup {
  Vec6 drift;        // e^{AT} w0
  Mat6 Wc;           // weighted controllability Gramian over [0, T]
  Mat3 Rinv;         // R_r^{-1}
  CommsParams comms; // numerator bound resolved at t = T
};

Setup make_setup(const RepositionProblem& prob) {
  if (prob.T <= 0.0) {
    throw std::invalid_argument("solve_reposition: horizon must be positive");
  }
  if (prob.a_r < 0.0) {
    throw std::invalid_argument("solve_reposition: a_r must be nonnegative");
  }
  Setup s;
  s.drift = state_transition(prob.T, prob.orbit) * prob.w0;
  s.Wc = weighted_gramian(prob.T, prob.R_r, prob.orbit);
  s.Rinv = Eigen::LLT<Mat3>(prob.R_r).solve(Mat3::Identity());
  s.comms = prob.comms.at_time(prob.T);
  return s;
}

// Terminal state reached by the costate-induced control: the [mu; 0]
// terminal costate pulls the drift endpoint by Wc's first three columns.
Vec6 terminal_state(const Vec3& mu, const Setup& s) {
  return s.drift - s.Wc.leftCols<3>() * mu;
}

Vec3 residual_impl(const Vec3& mu, const RepositionProblem& prob,
                   const Setup& s) {
  const Vec6 wf = terminal_state(mu, s);
  // Transversality: at an optimum the terminal position costate equals the
  // gradient of the terminal cost a_r * SINR at the reached endpoint.
  return mu - sinr_gradient(wf.head<3>(), s.comms, prob.a_r);
}

// Objective value of the control induced by mu, in closed form: the control
// energy is 1/2 [mu;0]^T Wc [mu;0], which collapses to the position block.
double objective(const Vec3& mu, const RepositionProblem& prob,
                 const Setup& s) {
  const double energy = 0.5 * mu.dot(s.Wc.topLeftCorner<3, 3>() * mu);
  return energy + prob.a_r * sinr_upper_bound(terminal_state(mu, s).head<3>(),
                                              s.comms);
}

Vec3 control_for_mu(double t, const Vec3& mu, const RepositionProblem& prob,
                    const Mat3& Rinv) {
  Vec6 ell = Vec6::Zero();
  ell.head<3>() = mu;
  const Vec6 lambda =
      state_transition(prob.T - t, prob.orbit).transpose() * ell;
  return -Rinv * lambda.tail<3>() / prob.orbit.m;
}

// Deterministic multistart grid. The zero start covers the drift solution;
// Gramian-targeted starts aim the endpoint at representative points of the
// antenna-visible half-space; axis fans sweep magnitudes bracketing the
// drift-gradient scale in case the targeted starts miss a basin.
std::vector<Vec3> start_grid(const RepositionProblem& prob, const Setup& s,
                             int count) {
  std::vector<Vec3> starts;
  starts.push_back(Vec3::Zero());

  const Vec3 pd = s.drift.head<3>();
  const double rd = pd.norm();
  const Mat3 Wpp = s.Wc.topLeftCorner<3, 3>();
  const Eigen::FullPivLU<Mat3> wpp_lu(Wpp);
  if (rd > 0.0 && wpp_lu.isInvertible()) {
    const Vec3 targets[] = {
        Vec3(-rd, 0.0, 0.0),
        Vec3(-0.25 * rd, pd.y(), pd.z()),
        Vec3(-0.05 * rd, pd.y(), pd.z()),
    };
    for (const Vec3& target : targets) {
      const Vec3 mu_t = wpp_lu.solve(pd - target);
      starts.push_back(mu_t);
      starts.push_back(0.5 * mu_t);
    }
  }

  double g = rd > 0.0 ? sinr_gradient(pd, s.comms, prob.a_r).norm() : 0.0;
  if (g <= 0.0) {
    g = 1e-6;  // drift endpoint in the dead zone: fall back to a fixed scale
  }
  const double decades[] = {1e-2, 1e-1, 1.0, 1e1, 1e2, 1e3};
  for (const double d : decades) {
    for (int axis = 0; axis < 3; ++axis) {
      for (const double sign : {1.0, -1.0}) {
        starts.push_back(sign * d * g * Vec3::Unit(axis));
      }
    }
  }

  if (count < static_cast<int>(starts.size())) {
    starts.resize(static_cast<std::size_t>(count));
  }
  return starts;
}

}  // namespace

Vec3 terminal_costate_residual(const Vec3& mu, const RepositionProblem& prob) {
  return residual_impl(mu, prob, make_setup(prob));
}

RepositionSolution solve_reposition(const RepositionProblem& prob,
                                    int multistart, double step) {
  if (multistart < 1) {
    throw std::invalid_argument("solve_reposition: multistart must be >= 1");
  }
  if (step <= 0.0) {
    throw std::invalid_argument("solve_reposition: step must be positive");
  }
  const Setup s = make_setup(prob);

  const auto F = [&](const Eigen::VectorXd& x) -> Eigen::VectorXd {
    return residual_impl(Vec3(x), prob, s);
  };
  const auto tol = [](const Eigen::VectorXd& x, double rnorm) {
    return rnorm < 1e-8 * (1.0 + x.norm());
  };

  struct Root {
    Vec3 mu;
    double cost;
    double residual_norm;
    int iterations;
  };
  std::vector<Root> roots;
  double best_failed_residual = std::numeric_limits<double>::infinity();

  for (const Vec3& x0 : start_grid(prob, s, multistart)) {
    detail::NewtonResult nr;
    try {
      nr = detail::damped_newton(F, x0, tol);
    } catch (const SolverError&) {
      continue;  // residual undefined at this start
    }
    if (!nr.converged) {
      best_failed_residual = std::min(best_failed_residual, nr.residual_norm);
      continue;
    }
    const Vec3 mu(nr.x);
    const bool duplicate =
        std::any_of(roots.begin(), roots.end(), [&](const Root& r) {
          return (r.mu - mu).norm() <= 1e-7 * (1.0 + r.mu.norm());
        });
    if (!duplicate) {
      roots.push_back({mu, objective(mu, prob, s), nr.residual_norm,
                       nr.iterations});
    }
  }

  if (roots.empty()) {
    throw SolverError("solve_reposition: no multistart converged (best residual " +
                      std::to_string(best_failed_residual) + ")");
  }

  const Root& best = *std::min_element(
      roots.begin(), roots.end(), [](const Root& a, const Root& b) {
        if (a.cost != b.cost) {
          return a.cost < b.cost;
        }
        return a.mu.norm() < b.mu.norm();
      });

  RepositionSolution sol;
  sol.mu = best.mu;
  const Vec6 wf = terminal_state(best.mu, s);
  sol.p_f = wf.head<3>();
  sol.v_f = wf.tail<3>();
  sol.residual_norm = best.residual_norm;
  sol.newton_iterations = best.iterations;
  sol.roots_found = static_cast<int>(roots.size());
  sol.energy_cost = 0.5 * best.mu.dot(s.Wc.topLeftCorner<3, 3>() * best.mu);
  sol.total_cost = best.cost;

  sol.trajectory = propagate(
      prob.w0,
      [&](double t) { return control_for_mu(t, best.mu, prob, s.Rinv); }, 0.0,
      prob.T, step, prob.orbit);
  sol.delta_v = delta_v(sol.trajectory, prob.orbit.m);

  sol.drift_solution =
      prob.a_r > 0.0 && sol.mu.norm() <= 1e-12 &&
      sinr_gradient(s.drift.head<3>(), s.comms, prob.a_r).norm() == 0.0;
  return sol;
}

Vec3 reposition_control(double t, const RepositionSolution& sol,
                        const RepositionProblem& prob) {
  if (t < 0.0 || t > prob.T) {
    throw std::out_of_range("reposition_control: t outside [0, T]");
  }
  const Mat3 Rinv = Eigen::LLT<Mat3>(prob.R_r).solve(Mat3::Identity());
  return control_for_mu(t, sol.mu, prob, Rinv);
}

}  // namespace jamopt
