#pragma once

#include "jamopt/relative_dynamics.hpp"

#include <functional>

namespace jamopt {

// Defender receive-antenna pattern, parameterized by cos(theta) where theta
// is the angle between the jammer direction and the antenna boresight (the
// -x axis of the Hill frame).
//
// combined_derivative supplies G'(theta)/sin(theta) analytically as a
// function of cos(theta). That quotient appears in the SINR position
// gradient; forming it from a numeric derivative and a 1/sin factor would
// blow up at theta = 0 even though the product is finite for smooth even
// patterns, so the pattern owner provides the cancelled form directly.
struct AntennaPattern {
  double peak_gain = 0.0;
  std::function<double(double)> gain;                 // cos(theta) -> G_d
  std::function<double(double)> combined_derivative;  // cos(theta) -> G_d'/sin

  // peak * cos^2(theta) in the forward half-space, zero behind the antenna
  // plane. Its combined derivative is -2 * peak * cos(theta) there.
  static AntennaPattern cosine_squared(double peak);
};

struct CommsParams {
  double P_a = 0.0;     // jammer transmit power, W
  double G_a = 0.0;     // jammer transmit antenna gain
  double P = 0.0;       // constant upper bound on the received friendly power product, W
  double sigma2 = 0.0;  // receiver noise power, W
  double lambda = 0.0;  // carrier wavelength, m
  AntennaPattern pattern;

  // Optional time-varying replacement for the constant numerator bound P.
  // The library ships no model for it; callers that know the friendly
  // channel's time profile can plug one in and every solver evaluation will
  // pick up P = numerator_hook(t).
  std::function<double(double)> numerator_hook;

  // Copy of these parameters with P resolved at time t through the hook (a
  // plain copy when no hook is installed).
  CommsParams at_time(double t) const;
};

// cos(theta) of the reception angle for jammer position p: -x / |p|.
// Throws GeometryError at |p| = 0.
double reception_angle_cos(const Vec3& p);

// Free-space path loss (lambda / (4 pi d))^2. Throws GeometryError for
// d <= 0.
double free_space_path_loss(double distance, double lambda);

// Thermal noise power k_B * T * B in watts.
double noise_power(double temperature_k, double bandwidth_hz);

// Jammer-to-defender channel product H_a = G_a * G_d(theta(p)) * L(|p|).
double jammer_channel(const Vec3& p, const CommsParams& params);

// The uplink SINR upper bound P / (P_a * H_a(p) + sigma2). Strictly positive;
// equals P / sigma2 wherever the antenna gain vanishes.
double sinr_upper_bound(const Vec3& p, const CommsParams& params);

// scale * d(sinr_upper_bound)/dp, assembled from closed-form pieces. The
// 1/sin(theta) factor of the chain rule never appears explicitly: the
// pattern's combined_derivative and the cancellation-free form of
// d(cos theta)/dp keep every term finite, including exactly on boresight.
// Identically zero in the interior of the gain dead zone.
Vec3 sinr_gradient(const Vec3& p, const CommsParams& params, double scale);

// 10 log10(x); -inf for x = 0 (the honest dB value of a zero gain).
double to_db(double linear);

}  // namespace jamopt
