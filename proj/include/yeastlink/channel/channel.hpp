#pragma once

#include <array>
#include <cstddef>
#include <vector>

namespace yeastlink::channel {

// Free-space diffusion with first-order degradation, SI units throughout
// (m, s, mol/m^3). The medium is static and unbounded; propagation is
// reaction plus diffusion only.
struct ChannelParams {
  double D = 1.0e-10;     // diffusion coefficient, m^2/s
  double k_alpha = 0.0;   // degradation rate, 1/s
  // Keeps the historical kernel form with an extra pi inside the exponent.
  // That variant does not conserve mass and exists for comparison runs only.
  bool legacy_exponent = false;

  // Protease coupling, used by the Monte Carlo extension only (k_re in
  // 1/((mol/m^3) * s) against a prescribed protease field).
  double k_re = 0.0;
  double D_B = 0.0;   // protease diffusivity, m^2/s (reserved)
  double k_B = 0.0;   // protease degradation, 1/s (reserved)
};

// Point-release kernel: concentration at distance r and lag t>0 after an
// instantaneous release of alpha0 moles. Spatial integral is
// alpha0 * exp(-k_alpha * t) for the default kernel.
double impulse_response(double r_m, double t_s, const ChannelParams& p,
                        double alpha0_mol);

// Release rate sampled at the source location: piecewise-linear (t_s,
// mol/s), times strictly increasing, rates >= 0.
struct EmissionSchedule {
  std::vector<double> t_s;
  std::vector<double> rate_mol_s;

  void validate() const;
  bool empty() const { return t_s.empty(); }
  double total_mol() const;  // trapezoid
};

// Time convolution of the emission with the point-release kernel,
// trapezoidal on the emission grid with interval refinement until successive
// estimates agree to 0.1%.
double response_from_emission(const EmissionSchedule& e, double r_m,
                              double t_s, const ChannelParams& p);

// Regular voxel grid of an initial concentration field (mol/m^3).
struct SampledField {
  std::array<double, 3> origin_m{0, 0, 0};  // center of voxel (0,0,0)
  double voxel_m = 0.0;
  std::array<std::size_t, 3> dims{0, 0, 0};
  std::vector<double> values;  // x-fastest

  double value(std::size_t ix, std::size_t iy, std::size_t iz) const;
  std::array<double, 3> center(std::size_t ix, std::size_t iy,
                               std::size_t iz) const;
  void validate() const;
};

// Propagates an initial distribution: direct numeric convolution with the
// Gaussian kernel, damped by exp(-k_alpha * t).
double response_from_initial_distribution(const SampledField& phi,
                                          const std::array<double, 3>& obs_m,
                                          double t_s, const ChannelParams& p);

// Lag of the concentration maximum at distance r > 0, by bounded scalar
// maximization. Equals r^2/(6 D) when k_alpha = 0. Throws std::domain_error
// for r = 0, where the response decays monotonically and no interior
// maximum exists.
double peak_time(double r_m, const ChannelParams& p);

// Mean of a radially symmetric function over a ball (|center| = c, radius a),
// by shell quadrature. Used to compare probe-averaged estimates against the
// analytic kernel without curvature bias.
double ball_average_impulse_response(double center_r_m, double radius_m,
                                     double t_s, const ChannelParams& p,
                                     double alpha0_mol);

}  // namespace yeastlink::channel
