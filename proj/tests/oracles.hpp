#pragma once

#include "jamopt/link_budget.hpp"
#include "jamopt/relative_dynamics.hpp"

#include <array>
#include <vector>

namespace jamopt::oracle {

// Direct transcription of a one-stage problem onto N piecewise-constant
// control intervals. The interval update is exact (matrix exponential of the
// augmented system), so the only approximation relative to the continuous
// problem is the control parameterization, and the transcription optimum can
// never undercut the true optimum by more than the quadrature error. That
// makes "gradient descent on this cannot beat the indirect solver" a genuine
// optimality check.
struct Transcription {
  int intervals = 0;
  double h = 0.0;
  Vec6 w0 = Vec6::Zero();
  Mat3 R = Mat3::Identity();
  double terminal_weight = 0.0;  // weight on SINR at the final state
  double running_weight = 0.0;   // weight on SINR integrated along the way
  CommsParams comms;

  Mat6 phi;      // state transition over one interval
  Mat6x3 gamma;  // control map over one interval
  // Gauss-Legendre nodes inside an interval, for the running SINR integral.
  std::array<Mat6, 5> phi_node;
  std::array<Mat6x3, 5> gamma_node;
  std::array<double, 5> node_weight;  // already scaled by h/2
};

Transcription make_transcription(const Vec6& w0, double duration,
                                 int intervals, const Mat3& R,
                                 double terminal_weight, double running_weight,
                                 const CommsParams& comms,
                                 const OrbitParams& orbit);

double transcription_cost(const Transcription& tr,
                          const std::vector<Vec3>& u);

// Finite-difference gradient descent with backtracking line search. Returns
// the best cost reached. The gradient is numerical on purpose: the oracle
// must not share the analytic-gradient code path it is used to judge.
double minimize_transcription(const Transcription& tr, std::vector<Vec3> u,
                              int max_iterations);

// Sample a continuous control law at interval midpoints.
std::vector<Vec3> sample_midpoints(const Transcription& tr,
                                   const std::vector<StateSample>& trajectory,
                                   double t_offset);

}  // namespace jamopt::oracle
