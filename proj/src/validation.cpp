#include "jamopt/validation.hpp"

#include "jamopt/config.hpp"
#include "jamopt/mission.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace jamopt {
namespace {

// 5-point Gauss-Legendre nodes and weights on [-1, 1].
constexpr double kGlNode = 0.906179845938664;
constexpr double kGlNodeInner = 0.538469310105683;
constexpr double kGlW0 = 0.568888888888889;
constexpr double kGlWInner = 0.478628670499366;
constexpr double kGlWOuter = 0.236926885056189;

struct WeightedPoint {
  double x;
  double w;
};

const WeightedPoint kGl5[5] = {
    {-kGlNode, kGlWOuter},
    {-kGlNodeInner, kGlWInner},
    {0.0, kGlW0},
    {kGlNodeInner, kGlWInner},
    {kGlNode, kGlWOuter},
};

// Random position with the reception angle and distance in comfortable
// ranges (away from both the dead-zone boundary and boresight).
Vec3 random_visible_point(std::mt19937& rng) {
  std::uniform_real_distribution<double> ucos(0.05, 0.95);
  std::uniform_real_distribution<double> urad(1e3, 1e5);
  std::uniform_real_distribution<double> uphi(0.0, 2.0 * std::numbers::pi);
  const double c = ucos(rng);
  const double r = urad(rng);
  const double phi = uphi(rng);
  const double s = std::sqrt(1.0 - c * c);
  return {-c * r, r * s * std::cos(phi), r * s * std::sin(phi)};
}

CheckResult make_result(const std::string& name, double value, double bound,
                        const std::string& note = "") {
  CheckResult res;
  res.name = name;
  res.value = value;
  res.bound = bound;
  res.passed = value < bound;
  res.note = note;
  return res;
}

}  // namespace

Vec3 finite_difference_sinr_gradient(const Vec3& p, const CommsParams& params,
                                     double scale) {
  const double h = p.norm() * 1e-6;
  Vec3 g;
  for (int i = 0; i < 3; ++i) {
    Vec3 hi = p, lo = p;
    hi(i) += h;
    lo(i) -= h;
    g(i) = (sinr_upper_bound(hi, params) - sinr_upper_bound(lo, params)) /
           (2.0 * h);
  }
  return scale * g;
}

Mat6 quadrature_gramian(double T, const Mat3& R, const OrbitParams& params,
                        int intervals) {
  const Mat3 Rinv = Eigen::LLT<Mat3>(R).solve(Mat3::Identity());
  const auto [A, B] = cw_matrices(params);
  (void)A;
  const Mat6 Q = B * Rinv * B.transpose();

  Mat6 W = Mat6::Zero();
  const double h = T / intervals;
  for (int k = 0; k < intervals; ++k) {
    const double mid = (k + 0.5) * h;
    for (const WeightedPoint& gp : kGl5) {
      const double tau = mid + 0.5 * h * gp.x;
      const Mat6 phi = state_transition(tau, params);
      W += (0.5 * h * gp.w) * (phi * Q * phi.transpose());
    }
  }
  return W;
}

std::vector<CheckResult> run_validation_suite() {
  std::vector<CheckResult> results;
  const ScenarioConfig cfg = reference_config();
  auto [rp, cp] = build_problems(cfg);

  // Analytic SINR gradient against central differences at random points.
  {
    std::mt19937 rng(20240811);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
      const Vec3 p = random_visible_point(rng);
      const Vec3 analytic = sinr_gradient(p, rp.comms, 1.0);
      const Vec3 numeric = finite_difference_sinr_gradient(p, rp.comms, 1.0);
      worst = std::max(worst, (analytic - numeric).norm() / numeric.norm());
    }
    results.push_back(make_result("sinr_gradient_vs_finite_differences", worst,
                                  1e-6, "1000 random points"));
  }

  // Van Loan Gramian against quadrature.
  {
    const Mat6 van_loan = weighted_gramian(rp.T, rp.R_r, rp.orbit);
    const Mat6 quad = quadrature_gramian(rp.T, rp.R_r, rp.orbit);
    results.push_back(make_result("gramian_van_loan_vs_quadrature",
                                  (van_loan - quad).norm() / quad.norm(),
                                  1e-8));
  }

  // Closed-form state transition against RK4 free drift over one orbit.
  {
    const double period = 2.0 * std::numbers::pi / rp.orbit.n;
    const Vec6 w0 = rp.w0;
    const auto traj = propagate(
        w0, [](double) { return Vec3::Zero(); }, 0.0, period, 1.0, rp.orbit);
    const Vec6 exact = state_transition(period, rp.orbit) * w0;
    results.push_back(make_result(
        "state_transition_vs_rk4_one_orbit",
        (traj.back().w - exact).norm() / exact.norm(), 1e-6));
  }

  // Semigroup property and unit determinant of the state transition.
  {
    const Mat6 a = state_transition(1234.5, rp.orbit);
    const Mat6 b = state_transition(2765.5, rp.orbit);
    const Mat6 ab = state_transition(4000.0, rp.orbit);
    const double semi = (a * b - ab).norm() / ab.norm();
    const double det = std::abs(a.determinant() - 1.0);
    results.push_back(make_result("state_transition_semigroup", semi, 1e-10));
    results.push_back(make_result("state_transition_determinant", det, 1e-10));
  }

  // Full reference solve; the remaining checks certify its optimality
  // conditions.
  const RepositionSolution s1 = solve_reposition(rp, cfg.multistart, cfg.step_s);
  cp.wT = s1.trajectory.back().w;
  const CruiseSolution s2 = solve_cruise(cp, cfg.step_s);

  results.push_back(make_result(
      "stage1_stationarity_residual",
      terminal_costate_residual(s1.mu, rp).norm() / (1.0 + s1.mu.norm()),
      1e-8));

  {
    Vec6 wf;
    wf << s1.p_f, s1.v_f;
    results.push_back(make_result(
        "stage1_endpoint_rk4_vs_algebraic",
        (s1.trajectory.back().w - wf).norm() / wf.norm(), 1e-5));
  }

  {
    // The optimal control must make R_r u + B^T lambda vanish along the way.
    double worst = 0.0;
    Vec6 ell = Vec6::Zero();
    ell.head<3>() = s1.mu;
    const auto [A, B] = cw_matrices(rp.orbit);
    (void)A;
    for (const StateSample& s : s1.trajectory) {
      const Vec6 lambda =
          state_transition(rp.T - s.t, rp.orbit).transpose() * ell;
      worst = std::max(
          worst, (rp.R_r * s.u + B.transpose() * lambda).norm());
    }
    results.push_back(make_result("stage1_control_stationarity", worst,
                                  1e-12 * (1.0 + s1.mu.norm())));
  }

  results.push_back(make_result(
      "stage2_terminal_costate", s2.terminal_costate_norm,
      1e-6 * std::max(1.0, s2.lambda0.norm())));

  {
    double lo = s2.hamiltonian.front(), hi = lo, mean = 0.0;
    for (const double h : s2.hamiltonian) {
      lo = std::min(lo, h);
      hi = std::max(hi, h);
      mean += h;
    }
    mean /= static_cast<double>(s2.hamiltonian.size());
    const double drift = (hi - lo) / std::max(1.0, std::abs(mean));
    results.push_back(make_result("stage2_hamiltonian_drift", drift, 1e-5));
  }

  {
    double worst = 0.0;
    for (const CruiseSample& s : s2.trajectory) {
      worst = std::max(worst, (cp.R_c * s.u +
                               s.lambda.tail<3>() / cp.orbit.m).norm());
    }
    results.push_back(make_result("stage2_control_stationarity", worst,
                                  1e-12 * (1.0 + s2.lambda0.norm())));
  }

  return results;
}

}  // namespace jamopt
