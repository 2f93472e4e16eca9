#include "jamopt/link_budget.hpp"

#include "jamopt/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace jamopt {

AntennaPattern AntennaPattern::cosine_squared(double peak) {
  if (peak <= 0.0) {
    throw std::invalid_argument("cosine_squared: peak gain must be positive");
  }
  AntennaPattern p;
  p.peak_gain = peak;
  p.gain = [peak](double c) { return c > 0.0 ? peak * c * c : 0.0; };
  // G(theta) = peak cos^2(theta), so G'(theta) = -2 peak cos(theta) sin(theta)
  // and G'/sin = -2 peak cos(theta); zero where the gain is cut off.
  p.combined_derivative = [peak](double c) {
    return c > 0.0 ? -2.0 * peak * c : 0.0;
  };
  return p;
}

CommsParams CommsParams::at_time(double t) const {
  if (!numerator_hook) {
    return *this;
  }
  CommsParams copy = *this;
  copy.P = numerator_hook(t);
  return copy;
}

double reception_angle_cos(const Vec3& p) {
  const double r = p.norm();
  if (r == 0.0) {
    throw GeometryError("reception angle undefined at zero separation");
  }
  return std::clamp(-p.x() / r, -1.0, 1.0);
}

double free_space_path_loss(double distance, double lambda) {
  if (distance <= 0.0) {
    throw GeometryError("free_space_path_loss: distance must be positive");
  }
  const double ratio = lambda / (4.0 * std::numbers::pi * distance);
  return ratio * ratio;
}

double noise_power(double temperature_k, double bandwidth_hz) {
  if (temperature_k <= 0.0 || bandwidth_hz <= 0.0) {
    throw std::invalid_argument(
        "noise_power: temperature and bandwidth must be positive");
  }
  constexpr double k_boltzmann = 1.380649e-23;  // J/K
  return k_boltzmann * temperature_k * bandwidth_hz;
}

double jammer_channel(const Vec3& p, const CommsParams& params) {
  const double c = reception_angle_cos(p);
  return params.G_a * params.pattern.gain(c) *
         free_space_path_loss(p.norm(), params.lambda);
}

double sinr_upper_bound(const Vec3& p, const CommsParams& params) {
  return params.P / (params.P_a * jammer_channel(p, params) + params.sigma2);
}

Vec3 sinr_gradient(const Vec3& p, const CommsParams& params, double scale) {
  const double c = reception_angle_cos(p);
  const double gain = params.pattern.gain(c);
  const double cd = params.pattern.combined_derivative(c);
  if (gain == 0.0 && cd == 0.0) {
    // Dead zone: the channel product is locally flat, the bound is constant.
    return Vec3::Zero();
  }

  const double r = p.norm();
  const double k = params.lambda / (4.0 * std::numbers::pi);
  const double loss = (k * k) / (r * r);
  const double denom = params.P_a * params.G_a * gain * loss + params.sigma2;
  const double front = params.P * params.P_a * params.G_a / (denom * denom);

  // d(cos theta)/dp written as (-(y^2+z^2), xy, xz)/r^3: algebraically equal
  // to (-1/r + x^2/r^3, ...) but immune to the cancellation that form suffers
  // near boresight.
  Vec3 dcos(-(p.y() * p.y() + p.z() * p.z()), p.x() * p.y(), p.x() * p.z());
  dcos /= r * r * r;

  // d(SINR)/dp = front * (G * dL/dp + L * dG/dp) with the signs folded in:
  // dL/dp = -2 k^2 p / r^4 and dG/dp = -combined_derivative * dcos.
  const Vec3 grad =
      front * (2.0 * k * k * gain / (r * r * r * r) * p + loss * cd * dcos);
  return scale * grad;
}

double to_db(double linear) {
  return 10.0 * std::log10(linear);
}

}  // namespace jamopt
