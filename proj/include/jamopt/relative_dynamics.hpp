#pragma once

#include <Eigen/Dense>

#include <functional>
#include <utility>
#include <vector>

namespace jamopt {

using Vec3 = Eigen::Vector3d;
using Vec6 = Eigen::Matrix<double, 6, 1>;
using Mat3 = Eigen::Matrix3d;
using Mat6 = Eigen::Matrix<double, 6, 6>;
using Mat6x3 = Eigen::Matrix<double, 6, 3>;

// Relative state of the jammer with respect to the defender in the defender's
// Hill frame: x radially outward, y along-track, z orbit-normal. The stacked
// form is ordered [x, y, z, vx, vy, vz].
struct RelativeState {
  Vec3 p;  // m
  Vec3 v;  // m/s

  Vec6 vec() const {
    Vec6 w;
    w << p, v;
    return w;
  }
  static RelativeState from_vec(const Vec6& w) {
    return {w.head<3>(), w.tail<3>()};
  }
};

struct OrbitParams {
  double n = 0.0;  // orbital rate of the reference (defender) orbit, rad/s
  double m = 0.0;  // jammer mass, kg
};

// Thrust command in Newtons, ordered [ux, uy, uz] in the Hill frame.
struct ControlInput {
  Vec3 u;
};

// One sample of an integrated trajectory.
struct StateSample {
  double t;  // s
  Vec6 w;
  Vec3 u;  // thrust applied at t, N
};

// The Clohessy-Wiltshire pair (A, B): relative motion linearized about a
// circular reference orbit, \dot w = A w + B u with B carrying 1/m.
std::pair<Mat6, Mat6x3> cw_matrices(const OrbitParams& params);

// Componentwise right-hand side of the same equations; kept as a separate
// code path from A*w + B*u so the two can cross-check each other.
Vec6 cw_derivative(const Vec6& w, const Vec3& u, const OrbitParams& params);

// Closed-form e^{At} for the CW system. Exact (up to rounding) for any t;
// degenerates to I + A t when n = 0.
Mat6 state_transition(double t, const OrbitParams& params);

// General dense matrix exponential (scaling-and-squaring with Pade
// approximation); used for the augmented block matrices below and as an
// independent cross-check of state_transition.
Eigen::MatrixXd matrix_exponential(const Eigen::MatrixXd& M);

// Weighted controllability Gramian W = \int_0^T e^{At} B R^{-1} B^T e^{A^T t} dt,
// computed with the augmented-exponential (Van Loan) construction. R must be
// symmetric positive definite. The result is symmetric positive semidefinite.
Mat6 weighted_gramian(double T, const Mat3& R, const OrbitParams& params);

// Fixed-step classical RK4 integration of \dot w = A w + B u(t) from t0 to t1.
// Samples land on t0 + k*step plus the exact endpoint (the final step is
// shortened when step does not divide the interval).
std::vector<StateSample> propagate(const Vec6& w0,
                                   const std::function<Vec3(double)>& control,
                                   double t0, double t1, double step,
                                   const OrbitParams& params);

// Trapezoidal delta-v of a thrust history: (1/mass) * integral of |u| dt.
double delta_v(const std::vector<double>& t, const std::vector<Vec3>& u,
               double mass);
double delta_v(const std::vector<StateSample>& trajectory, double mass);

}  // namespace jamopt
