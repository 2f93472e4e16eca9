#include "jamopt/relative_dynamics.hpp"

#include "jamopt/errors.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <stdexcept>

namespace jamopt {

std::pair<Mat6, Mat6x3> cw_matrices(const OrbitParams& params) {
  const double n = params.n;
  Mat6 A = Mat6::Zero();
  A.block<3, 3>(0, 3) = Mat3::Identity();
  A(3, 0) = 3.0 * n * n;
  A(3, 4) = 2.0 * n;
  A(4, 3) = -2.0 * n;
  A(5, 2) = -n * n;

  Mat6x3 B = Mat6x3::Zero();
  B.block<3, 3>(3, 0) = Mat3::Identity() / params.m;
  return {A, B};
}

Vec6 cw_derivative(const Vec6& w, const Vec3& u, const OrbitParams& params) {
  const double n = params.n;
  const double m = params.m;
  Vec6 dw;
  dw(0) = w(3);
  dw(1) = w(4);
  dw(2) = w(5);
  dw(3) = 3.0 * n * n * w(0) + 2.0 * n * w(4) + u(0) / m;
  dw(4) = -2.0 * n * w(3) + u(1) / m;
  dw(5) = -n * n * w(2) + u(2) / m;
  return dw;
}

Mat6 state_transition(double t, const OrbitParams& params) {
  const double n = params.n;
  Mat6 phi = Mat6::Identity();
  if (n == 0.0) {
    // Without orbital coupling A is nilpotent (A^2 = 0), so e^{At} = I + A t.
    phi.block<3, 3>(0, 3) = t * Mat3::Identity();
    return phi;
  }
  const double nt = n * t;
  const double c = std::cos(nt);
  const double s = std::sin(nt);

  phi(0, 0) = 4.0 - 3.0 * c;
  phi(0, 3) = s / n;
  phi(0, 4) = 2.0 * (1.0 - c) / n;

  phi(1, 0) = 6.0 * (s - nt);
  phi(1, 3) = 2.0 * (c - 1.0) / n;
  phi(1, 4) = (4.0 * s - 3.0 * nt) / n;

  phi(2, 2) = c;
  phi(2, 5) = s / n;

  phi(3, 0) = 3.0 * n * s;
  phi(3, 3) = c;
  phi(3, 4) = 2.0 * s;

  phi(4, 0) = 6.0 * n * (c - 1.0);
  phi(4, 3) = -2.0 * s;
  phi(4, 4) = 4.0 * c - 3.0;

  phi(5, 2) = -n * s;
  phi(5, 5) = c;
  return phi;
}

Eigen::MatrixXd matrix_exponential(const Eigen::MatrixXd& M) {
  if (M.rows() != M.cols()) {
    throw std::invalid_argument("matrix_exponential: matrix must be square");
  }
  return M.exp();
}

Mat6 weighted_gramian(double T, const Mat3& R, const OrbitParams& params) {
  if (T < 0.0) {
    throw std::invalid_argument("weighted_gramian: horizon must be nonnegative");
  }
  if ((R - R.transpose()).norm() > 1e-12 * (1.0 + R.norm())) {
    throw std::invalid_argument("weighted_gramian: R must be symmetric");
  }
  Eigen::LLT<Mat3> llt(R);
  if (llt.info() != Eigen::Success) {
    throw std::invalid_argument("weighted_gramian: R must be positive definite");
  }
  const Mat3 Rinv = llt.solve(Mat3::Identity());

  const auto [A, B] = cw_matrices(params);
  const Mat6 Q = B * Rinv * B.transpose();

  // Van Loan block trick: the exponential of [[-A, Q], [0, A^T]] * T holds
  // e^{A^T T} in its lower-right block and e^{-AT} * W in its upper-right
  // block, so W falls out of a single 12x12 exponential.
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(12, 12);
  M.topLeftCorner(6, 6) = -A;
  M.topRightCorner(6, 6) = Q;
  M.bottomRightCorner(6, 6) = A.transpose();

  const Eigen::MatrixXd E = matrix_exponential(M * T);
  const Mat6 W = E.bottomRightCorner(6, 6).transpose() * E.topRightCorner(6, 6);
  return 0.5 * (W + W.transpose());
}

std::vector<StateSample> propagate(const Vec6& w0,
                                   const std::function<Vec3(double)>& control,
                                   double t0, double t1, double step,
                                   const OrbitParams& params) {
  if (t1 < t0) {
    throw std::invalid_argument("propagate: t1 must not precede t0");
  }
  if (step <= 0.0) {
    throw std::invalid_argument("propagate: step must be positive");
  }

  std::vector<StateSample> out;
  out.reserve(static_cast<std::size_t>((t1 - t0) / step) + 2);

  Vec6 w = w0;
  double t = t0;
  out.push_back({t, w, control(t)});
  if (t1 == t0) {
    return out;
  }

  for (std::size_t i = 1;; ++i) {
    // Keep the grid exactly on t0 + i*step; the last interval shrinks to hit
    // t1 instead of overshooting it.
    double tn = t0 + static_cast<double>(i) * step;
    if (tn >= t1 - 1e-9 * step) {
      tn = t1;
    }
    const double h = tn - t;

    const Vec3 ua = control(t);
    const Vec3 um = control(t + 0.5 * h);
    const Vec3 ub = control(tn);
    const Vec6 k1 = cw_derivative(w, ua, params);
    const Vec6 k2 = cw_derivative(w + 0.5 * h * k1, um, params);
    const Vec6 k3 = cw_derivative(w + 0.5 * h * k2, um, params);
    const Vec6 k4 = cw_derivative(w + h * k3, ub, params);
    w += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    t = tn;

    if (!w.allFinite()) {
      throw SolverError("propagate: integration diverged (non-finite state)");
    }
    out.push_back({t, w, ub});
    if (t == t1) {
      break;
    }
  }
  return out;
}

double delta_v(const std::vector<double>& t, const std::vector<Vec3>& u,
               double mass) {
  if (t.size() != u.size()) {
    throw std::invalid_argument("delta_v: time and control series differ in length");
  }
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < t.size(); ++i) {
    total += 0.5 * (u[i].norm() + u[i + 1].norm()) * (t[i + 1] - t[i]);
  }
  return total / mass;
}

double delta_v(const std::vector<StateSample>& trajectory, double mass) {
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < trajectory.size(); ++i) {
    total += 0.5 * (trajectory[i].u.norm() + trajectory[i + 1].u.norm()) *
             (trajectory[i + 1].t - trajectory[i].t);
  }
  return total / mass;
}

}  // namespace jamopt
