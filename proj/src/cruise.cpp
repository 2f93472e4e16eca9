#include "jamopt/cruise.hpp"

#include "jamopt/errors.hpp"
#include "solver_common.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace jamopt {
namespace {

constexpr double kProximityGuardM = 10.0;

using Vec12 = Eigen::Matrix<double, 12, 1>;

struct CruiseContext {
  Mat6 A;
  Mat6x3 B;
  Mat3 Rinv;
  const CruiseProblem* prob;

  Vec3 control(const Vec6& lambda) const {
    return -Rinv * lambda.tail<3>() / prob->orbit.m;
  }

  Vec12 derivative(double t, const Vec12& y) const {
    const Vec6 w = y.head<6>();
    const Vec6 lambda = y.tail<6>();
    const Vec3 u = control(lambda);
    Vec12 dy;
    dy.head<6>() = cw_derivative(w, u, prob->orbit);
    dy.tail<6>() = costate_derivative(w, lambda, *prob, t);
    return dy;
  }
};

CruiseContext make_context(const CruiseProblem& prob) {
  if (prob.Tprime <= prob.T) {
    throw std::invalid_argument("solve_cruise: window must have positive length");
  }
  if (prob.a_c < 0.0) {
    throw std::invalid_argument("solve_cruise: a_c must be nonnegative");
  }
  Eigen::LLT<Mat3> llt(prob.R_c);
  if ((prob.R_c - prob.R_c.transpose()).norm() >
          1e-12 * (1.0 + prob.R_c.norm()) ||
      llt.info() != Eigen::Success) {
    throw std::invalid_argument("solve_cruise: R_c must be symmetric positive definite");
  }
  CruiseContext ctx;
  std::tie(ctx.A, ctx.B) = cw_matrices(prob.orbit);
  ctx.Rinv = llt.solve(Mat3::Identity());
  ctx.prob = &prob;
  return ctx;
}

std::pair<Vec6, std::vector<CruiseSample>> integrate_segment(
    const CruiseContext& ctx, const Vec6& w0, const Vec6& lambda0, double t0,
    double t1, double step) {
  std::vector<CruiseSample> samples;
  samples.reserve(static_cast<std::size_t>((t1 - t0) / step) + 2);

  Vec12 y;
  y << w0, lambda0;
  double t = t0;
  samples.push_back({t, w0, lambda0, ctx.control(lambda0)});

  for (std::size_t i = 1; t < t1; ++i) {
    double tn = t0 + static_cast<double>(i) * step;
    if (tn >= t1 - 1e-9 * step) {
      tn = t1;
    }
    const double h = tn - t;
    const Vec12 k1 = ctx.derivative(t, y);
    const Vec12 k2 = ctx.derivative(t + 0.5 * h, y + 0.5 * h * k1);
    const Vec12 k3 = ctx.derivative(t + 0.5 * h, y + 0.5 * h * k2);
    const Vec12 k4 = ctx.derivative(tn, y + h * k3);
    y += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    t = tn;

    if (!y.allFinite()) {
      throw SolverError("shoot: integration diverged (non-finite state)");
    }
    const Vec6 w = y.head<6>();
    const Vec6 lambda = y.tail<6>();
    if (w.head<3>().norm() < kProximityGuardM) {
      throw SolverError("shoot: trajectory violates the 10 m proximity guard");
    }
    samples.push_back({t, w, lambda, ctx.control(lambda)});
  }
  return {y.tail<6>(), std::move(samples)};
}

double hamiltonian_value(const CruiseContext& ctx, const CruiseSample& s) {
  const CruiseProblem& prob = *ctx.prob;
  const CommsParams comms = prob.comms.at_time(s.t);
  return 0.5 * s.u.dot(prob.R_c * s.u) +
         prob.a_c * sinr_upper_bound(s.w.head<3>(), comms) +
         s.lambda.dot(ctx.A * s.w + ctx.B * s.u);
}

CruiseSolution finish_solution(const CruiseContext& ctx, const Vec6& lambda0,
                               std::vector<CruiseSample> trajectory,
                               int iterations, bool used_multiple) {
  const CruiseProblem& prob = *ctx.prob;
  CruiseSolution sol;
  sol.lambda0 = lambda0;
  sol.trajectory = std::move(trajectory);
  sol.terminal_costate_norm = sol.trajectory.back().lambda.norm();
  sol.newton_iterations = iterations;
  sol.used_multiple_shooting = used_multiple;

  std::vector<double> t;
  std::vector<Vec3> u;
  t.reserve(sol.trajectory.size());
  u.reserve(sol.trajectory.size());
  double cost = 0.0, prev = 0.0;
  for (std::size_t i = 0; i < sol.trajectory.size(); ++i) {
    const CruiseSample& s = sol.trajectory[i];
    t.push_back(s.t);
    u.push_back(s.u);
    const CommsParams comms = prob.comms.at_time(s.t);
    const double integrand =
        0.5 * s.u.dot(prob.R_c * s.u) +
        prob.a_c * sinr_upper_bound(s.w.head<3>(), comms);
    if (i > 0) {
      cost += 0.5 * (integrand + prev) * (s.t - sol.trajectory[i - 1].t);
    }
    prev = integrand;
    if (reception_angle_cos(s.w.head<3>()) <= 0.0) {
      ++sol.dead_zone_samples;
    }
    sol.hamiltonian.push_back(hamiltonian_value(ctx, s));
  }
  sol.total_cost = cost;
  sol.delta_v = delta_v(t, u, prob.orbit.m);
  return sol;
}

// Multiple shooting over `segments` uniform pieces: the unknown vector packs
// lambda at the window start plus (state, costate) at each interior knot; the
// residual stacks the continuity defects and the terminal costate.
struct MultipleShooting {
  const CruiseContext* ctx;
  double step;
  int segments;
  std::vector<double> knots;

  Eigen::VectorXd residual(const Eigen::VectorXd& z) const {
    const CruiseProblem& prob = *ctx->prob;
    Eigen::VectorXd out(z.size());
    Vec6 w = prob.wT;
    Vec6 lambda = z.head<6>();
    for (int k = 0; k < segments; ++k) {
      auto [lam_end, samples] =
          integrate_segment(*ctx, w, lambda, knots[k], knots[k + 1], step);
      const Vec6 w_end = samples.back().w;
      if (k + 1 < segments) {
        const Vec6 w_next = z.segment<6>(6 + 12 * k);
        const Vec6 lam_next = z.segment<6>(12 + 12 * k);
        out.segment<6>(12 * k) = w_end - w_next;
        out.segment<6>(6 + 12 * k) = lam_end - lam_next;
        w = w_next;
        lambda = lam_next;
      } else {
        out.tail<6>() = lam_end;
      }
    }
    return out;
  }

  // Chain the converged knots back into one sweep (dropping each segment's
  // duplicated first sample after the first segment).
  std::vector<CruiseSample> assemble(const Eigen::VectorXd& z) const {
    const CruiseProblem& prob = *ctx->prob;
    std::vector<CruiseSample> all;
    Vec6 w = prob.wT;
    Vec6 lambda = z.head<6>();
    for (int k = 0; k < segments; ++k) {
      auto [lam_end, samples] =
          integrate_segment(*ctx, w, lambda, knots[k], knots[k + 1], step);
      (void)lam_end;
      const std::size_t from = k == 0 ? 0 : 1;
      all.insert(all.end(), samples.begin() + from, samples.end());
      if (k + 1 < segments) {
        w = z.segment<6>(6 + 12 * k);
        lambda = z.segment<6>(12 + 12 * k);
      }
    }
    return all;
  }
};

CruiseSolution solve_multiple(const CruiseContext& ctx, double step,
                              int prior_iterations) {
  const CruiseProblem& prob = *ctx.prob;
  constexpr int kSegments = 10;

  MultipleShooting ms;
  ms.ctx = &ctx;
  ms.step = step;
  ms.segments = kSegments;
  ms.knots.resize(kSegments + 1);
  for (int k = 0; k <= kSegments; ++k) {
    ms.knots[k] = prob.T + (prob.Tprime - prob.T) *
                               static_cast<double>(k) / kSegments;
  }

  // Seed the knots from the coasting sweep (lambda0 = 0).
  Eigen::VectorXd z = Eigen::VectorXd::Zero(6 + 12 * (kSegments - 1));
  {
    Vec6 w = prob.wT;
    Vec6 lambda = Vec6::Zero();
    for (int k = 0; k + 1 < kSegments; ++k) {
      auto [lam_end, samples] =
          integrate_segment(ctx, w, lambda, ms.knots[k], ms.knots[k + 1], step);
      w = samples.back().w;
      lambda = lam_end;
      z.segment<6>(6 + 12 * k) = w;
      z.segment<6>(12 + 12 * k) = lambda;
    }
  }

  const auto F = [&](const Eigen::VectorXd& x) { return ms.residual(x); };
  const auto tol = [](const Eigen::VectorXd& x, double rnorm) {
    return rnorm < 1e-6 * std::max(1.0, x.head<6>().norm());
  };
  const detail::NewtonResult nr = detail::damped_newton(F, z, tol);
  if (!nr.converged) {
    throw SolverError(
        "solve_cruise: multiple shooting did not converge (best residual " +
        std::to_string(nr.residual_norm) + ")");
  }
  return finish_solution(ctx, nr.x.head<6>(), ms.assemble(nr.x),
                         prior_iterations + nr.iterations, true);
}

}  // namespace

Vec6 costate_derivative(const Vec6& w, const Vec6& lambda,
                        const CruiseProblem& prob, double t) {
  const auto [A, B] = cw_matrices(prob.orbit);
  (void)B;
  Vec6 dlambda = -A.transpose() * lambda;
  if (prob.a_c != 0.0) {
    const CommsParams comms = prob.comms.at_time(t);
    dlambda.head<3>() -= sinr_gradient(w.head<3>(), comms, prob.a_c);
  }
  return dlambda;
}

std::pair<Vec6, std::vector<CruiseSample>> shoot(const Vec6& lambda0,
                                                 const CruiseProblem& prob,
                                                 double step) {
  if (step <= 0.0) {
    throw std::invalid_argument("shoot: step must be positive");
  }
  const CruiseContext ctx = make_context(prob);
  return integrate_segment(ctx, prob.wT, lambda0, prob.T, prob.Tprime, step);
}

CruiseSolution solve_cruise(const CruiseProblem& prob, double step,
                            ShootingMethod method) {
  if (step <= 0.0) {
    throw std::invalid_argument("solve_cruise: step must be positive");
  }
  const CruiseContext ctx = make_context(prob);

  if (method == ShootingMethod::multiple_only) {
    return solve_multiple(ctx, step, 0);
  }

  const auto F = [&](const Eigen::VectorXd& x) -> Eigen::VectorXd {
    return integrate_segment(ctx, prob.wT, Vec6(x), prob.T, prob.Tprime, step)
        .first;
  };
  const auto tol = [](const Eigen::VectorXd& x, double rnorm) {
    return rnorm < 1e-6 * std::max(1.0, x.norm());
  };

  detail::NewtonResult nr;
  bool single_failed = false;
  std::string failure;
  try {
    nr = detail::damped_newton(F, Vec6::Zero(), tol);
    if (!nr.converged) {
      single_failed = true;
      failure = "single shooting stalled (best residual " +
                std::to_string(nr.residual_norm) + ")";
    }
  } catch (const SolverError& e) {
    single_failed = true;
    failure = e.what();
  }

  if (single_failed) {
    if (method == ShootingMethod::single_only) {
      throw SolverError("solve_cruise: " + failure);
    }
    return solve_multiple(ctx, step, nr.iterations);
  }

  auto [lam_end, samples] =
      integrate_segment(ctx, prob.wT, Vec6(nr.x), prob.T, prob.Tprime, step);
  (void)lam_end;
  return finish_solution(ctx, Vec6(nr.x), std::move(samples), nr.iterations,
                         false);
}

}  // namespace jamopt
