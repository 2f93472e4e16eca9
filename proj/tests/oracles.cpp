#include "oracles.hpp"

#include <algorithm>
#include <cmath>

namespace jamopt::oracle {
namespace {

constexpr double kNode = 0.906179845938664;
constexpr double kNodeInner = 0.538469310105683;
constexpr double kW0 = 0.568888888888889;
constexpr double kWInner = 0.478628670499366;
constexpr double kWOuter = 0.236926885056189;

constexpr std::array<double, 5> kGlNodes = {-kNode, -kNodeInner, 0.0,
                                            kNodeInner, kNode};
constexpr std::array<double, 5> kGlWeights = {kWOuter, kWInner, kW0, kWInner,
                                              kWOuter};

Mat6x3 control_map(double s, const OrbitParams& orbit) {
  const auto [A, B] = cw_matrices(orbit);
  Eigen::MatrixXd aug = Eigen::MatrixXd::Zero(9, 9);
  aug.topLeftCorner(6, 6) = A;
  aug.topRightCorner(6, 3) = B;
  return matrix_exponential(aug * s).topRightCorner(6, 3);
}

}  // namespace

Transcription make_transcription(const Vec6& w0, double duration,
                                 int intervals, const Mat3& R,
                                 double terminal_weight, double running_weight,
                                 const CommsParams& comms,
                                 const OrbitParams& orbit) {
  Transcription tr;
  tr.intervals = intervals;
  tr.h = duration / intervals;
  tr.w0 = w0;
  tr.R = R;
  tr.terminal_weight = terminal_weight;
  tr.running_weight = running_weight;
  tr.comms = comms;
  tr.phi = state_transition(tr.h, orbit);
  tr.gamma = control_map(tr.h, orbit);
  for (int i = 0; i < 5; ++i) {
    const double s = tr.h * 0.5 * (1.0 + kGlNodes[i]);
    tr.phi_node[i] = state_transition(s, orbit);
    tr.gamma_node[i] = control_map(s, orbit);
    tr.node_weight[i] = kGlWeights[i] * tr.h * 0.5;
  }
  return tr;
}

double transcription_cost(const Transcription& tr,
                          const std::vector<Vec3>& u) {
  Vec6 w = tr.w0;
  double cost = 0.0;
  for (int k = 0; k < tr.intervals; ++k) {
    const Vec3& uk = u[static_cast<std::size_t>(k)];
    cost += 0.5 * tr.h * uk.dot(tr.R * uk);
    if (tr.running_weight != 0.0) {
      for (int i = 0; i < 5; ++i) {
        const Vec6 wn = tr.phi_node[i] * w + tr.gamma_node[i] * uk;
        cost += tr.running_weight * tr.node_weight[i] *
                sinr_upper_bound(wn.head<3>(), tr.comms);
      }
    }
    w = tr.phi * w + tr.gamma * uk;
  }
  if (tr.terminal_weight != 0.0) {
    cost += tr.terminal_weight * sinr_upper_bound(w.head<3>(), tr.comms);
  }
  return cost;
}

double minimize_transcription(const Transcription& tr, std::vector<Vec3> u,
                              int max_iterations) {
  const int dim = 3 * tr.intervals;
  const auto cost_of = [&](const std::vector<Vec3>& v) {
    return transcription_cost(tr, v);
  };

  double cost = cost_of(u);
  double alpha = 0.05;
  std::vector<Vec3> grad(u.size());
  std::vector<Vec3> trial(u.size());

  for (int iter = 0; iter < max_iterations; ++iter) {
    double grad_norm2 = 0.0;
    for (std::size_t k = 0; k < u.size(); ++k) {
      for (int i = 0; i < 3; ++i) {
        const double step = 1e-6 * (1.0 + std::abs(u[k](i)));
        const double saved = u[k](i);
        u[k](i) = saved + step;
        const double hi = cost_of(u);
        u[k](i) = saved - step;
        const double lo = cost_of(u);
        u[k](i) = saved;
        grad[k](i) = (hi - lo) / (2.0 * step);
        grad_norm2 += grad[k](i) * grad[k](i);
      }
    }
    if (grad_norm2 < 1e-20 * static_cast<double>(dim)) {
      break;
    }

    bool accepted = false;
    alpha = std::min(alpha * 2.0, 10.0);
    for (int halving = 0; halving < 60; ++halving) {
      for (std::size_t k = 0; k < u.size(); ++k) {
        trial[k] = u[k] - alpha * grad[k];
      }
      const double trial_cost = cost_of(trial);
      if (trial_cost <= cost - 1e-4 * alpha * grad_norm2) {
        u.swap(trial);
        accepted = trial_cost < cost - 1e-14 * std::abs(cost);
        cost = trial_cost;
        break;
      }
      alpha *= 0.5;
    }
    if (!accepted) {
      break;  // line search stalled; we are at numerical precision
    }
  }
  return cost;
}

std::vector<Vec3> sample_midpoints(const Transcription& tr,
                                   const std::vector<StateSample>& trajectory,
                                   double t_offset) {
  std::vector<Vec3> u(static_cast<std::size_t>(tr.intervals), Vec3::Zero());
  for (int k = 0; k < tr.intervals; ++k) {
    const double t = t_offset + (k + 0.5) * tr.h;
    // Linear interpolation between the bracketing samples.
    const auto it = std::lower_bound(
        trajectory.begin(), trajectory.end(), t,
        [](const StateSample& s, double value) { return s.t < value; });
    if (it == trajectory.begin()) {
      u[static_cast<std::size_t>(k)] = it->u;
    } else if (it == trajectory.end()) {
      u[static_cast<std::size_t>(k)] = trajectory.back().u;
    } else {
      const StateSample& b = *it;
      const StateSample& a = *(it - 1);
      const double f = (t - a.t) / (b.t - a.t);
      u[static_cast<std::size_t>(k)] = (1.0 - f) * a.u + f * b.u;
    }
  }
  return u;
}

}  // namespace jamopt::oracle
