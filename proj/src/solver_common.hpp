#pragma once

// Internal damped-Newton root finder shared by the two stage solvers. Not
// installed as public API.

#include "jamopt/errors.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <functional>
#include <limits>

namespace jamopt::detail {

struct NewtonResult {
  Eigen::VectorXd x;
  Eigen::VectorXd residual;
  double residual_norm = std::numeric_limits<double>::infinity();
  int iterations = 0;
  bool converged = false;
};

// Newton iteration on F(x) = 0 with a forward-difference Jacobian and
// residual-norm backtracking (step halved up to max_halvings times until the
// norm decreases). F may throw SolverError for a hopeless iterate; such
// trials count as an infinite residual and the damping keeps shrinking the
// step. `converged(x, rnorm)` decides success so each caller can scale its
// tolerance to its own variables.
inline NewtonResult damped_newton(
    const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& F,
    const Eigen::VectorXd& x0,
    const std::function<bool(const Eigen::VectorXd&, double)>& converged,
    int max_iterations = 100, int max_halvings = 20) {
  NewtonResult res;
  res.x = x0;

  auto eval = [&](const Eigen::VectorXd& x, Eigen::VectorXd& out) -> double {
    try {
      out = F(x);
    } catch (const SolverError&) {
      return std::numeric_limits<double>::infinity();
    }
    if (!out.allFinite()) {
      return std::numeric_limits<double>::infinity();
    }
    return out.norm();
  };

  res.residual_norm = eval(res.x, res.residual);
  if (std::isinf(res.residual_norm)) {
    throw SolverError("newton: residual undefined at the initial guess");
  }

  const auto dim = x0.size();
  for (int iter = 0; iter < max_iterations; ++iter) {
    if (converged(res.x, res.residual_norm)) {
      res.converged = true;
      return res;
    }
    res.iterations = iter + 1;

    // Forward-difference Jacobian, one column per perturbed coordinate.
    Eigen::MatrixXd J(dim, dim);
    bool jacobian_ok = true;
    for (Eigen::Index j = 0; j < dim; ++j) {
      const double h = 1e-6 * (1.0 + std::abs(res.x(j)));
      Eigen::VectorXd xp = res.x;
      xp(j) += h;
      Eigen::VectorXd Fp;
      if (std::isinf(eval(xp, Fp))) {
        jacobian_ok = false;
        break;
      }
      J.col(j) = (Fp - res.residual) / h;
    }
    if (!jacobian_ok) {
      return res;  // not converged; caller reports the best residual
    }

    const Eigen::FullPivLU<Eigen::MatrixXd> lu(J);
    if (!lu.isInvertible()) {
      return res;
    }
    const Eigen::VectorXd step = lu.solve(-res.residual);

    bool accepted = false;
    double damp = 1.0;
    for (int k = 0; k <= max_halvings; ++k, damp *= 0.5) {
      const Eigen::VectorXd trial = res.x + damp * step;
      Eigen::VectorXd Ft;
      const double norm_t = eval(trial, Ft);
      if (norm_t < res.residual_norm) {
        res.x = trial;
        res.residual = Ft;
        res.residual_norm = norm_t;
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      return res;  // stalled
    }
  }
  res.converged = converged(res.x, res.residual_norm);
  return res;
}

}  // namespace jamopt::detail
