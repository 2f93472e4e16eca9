#pragma once

#include "jamopt/link_budget.hpp"
#include "jamopt/relative_dynamics.hpp"

#include <string>
#include <vector>

namespace jamopt {

// Independent numerical oracles. These deliberately avoid the code paths
// they are used to check: the finite-difference gradient never touches the
// analytic gradient, and the quadrature Gramian uses the closed-form state
// transition instead of the augmented matrix exponential.

// Central finite differences of sinr_upper_bound, step |p| * 1e-6 per axis.
Vec3 finite_difference_sinr_gradient(const Vec3& p, const CommsParams& params,
                                     double scale);

// Composite Gauss-Legendre quadrature (5 nodes per interval) of the Gramian
// integrand e^{At} B R^{-1} B^T e^{A^T t}.
Mat6 quadrature_gramian(double T, const Mat3& R, const OrbitParams& params,
                        int intervals = 200);

struct CheckResult {
  std::string name;
  bool passed = false;
  double value = 0.0;  // the measured defect
  double bound = 0.0;  // what it must stay below
  std::string note;
};

// The built-in self-check suite behind the CLI's `validate` command. Runs
// the oracle comparisons plus a full solve of the bundled reference scenario
// and checks the optimality conditions on the result. Deterministic.
std::vector<CheckResult> run_validation_suite();

}  // namespace jamopt
