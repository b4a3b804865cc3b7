#include "yeastlink/channel/channel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "yeastlink/errors.hpp"

namespace yeastlink::channel {

namespace {
constexpr double kPi = std::numbers::pi;
}

double impulse_response(double r_m, double t_s, const ChannelParams& p,
                        double alpha0_mol) {
  if (!(t_s > 0.0))
    throw std::domain_error("impulse_response: t must be > 0, got " +
                            std::to_string(t_s));
  if (r_m < 0.0) throw std::domain_error("impulse_response: negative r");
  if (!(p.D > 0.0)) throw config_error("impulse_response: D must be > 0");
  if (p.k_alpha < 0.0) throw config_error("impulse_response: negative k_alpha");
  const double four_dt = 4.0 * p.D * t_s;
  const double gauss_denom = p.legacy_exponent ? kPi * four_dt : four_dt;
  const double prefactor = std::pow(kPi * four_dt, -1.5);
  return alpha0_mol * prefactor *
         std::exp(-(r_m * r_m / gauss_denom + p.k_alpha * t_s));
}

void EmissionSchedule::validate() const {
  if (t_s.size() != rate_mol_s.size())
    throw data_error("emission schedule: size mismatch");
  for (std::size_t i = 0; i < t_s.size(); ++i) {
    if (!std::isfinite(t_s[i]) || !std::isfinite(rate_mol_s[i]))
      throw data_error("emission schedule: non-finite sample");
    if (rate_mol_s[i] < 0.0) throw data_error("emission schedule: negative rate");
    if (i > 0 && !(t_s[i] > t_s[i - 1]))
      throw data_error("emission schedule: times must be strictly increasing");
  }
}

double EmissionSchedule::total_mol() const {
  double sum = 0.0;
  for (std::size_t i = 1; i < t_s.size(); ++i)
    sum += 0.5 * (rate_mol_s[i] + rate_mol_s[i - 1]) * (t_s[i] - t_s[i - 1]);
  return sum;
}

namespace {

// Trapezoid of e(tau) * G(r, t - tau) over [a, b] with recursive refinement.
// The kernel vanishes fast as tau -> t for r > 0, so plain refinement is
// enough; depth is capped to keep evaluation bounded.
double convolve_interval(const EmissionSchedule& e, double ea, double eb,
                         double a, double b, double r, double t,
                         const ChannelParams& p, int depth) {
  auto kern = [&](double tau) {
    const double lag = t - tau;
    if (lag <= 0.0) return 0.0;
    return impulse_response(r, lag, p, 1.0);
  };
  auto rate_at = [&](double tau) {
    const double w = (tau - a) / (b - a);
    return ea + w * (eb - ea);
  };
  const double fa = rate_at(a) * kern(a);
  const double fb = rate_at(b) * kern(b);
  const double mid = 0.5 * (a + b);
  const double fm = rate_at(mid) * kern(mid);
  const double coarse = 0.5 * (fa + fb) * (b - a);
  const double fine = 0.25 * (fa + 2.0 * fm + fb) * (b - a);
  if (depth >= 24 ||
      std::abs(fine - coarse) <= 1e-3 * std::max(std::abs(fine), 1e-300))
    return fine;
  return convolve_interval(e, ea, rate_at(mid), a, mid, r, t, p, depth + 1) +
         convolve_interval(e, rate_at(mid), eb, mid, b, r, t, p, depth + 1);
}

}  // namespace

double response_from_emission(const EmissionSchedule& e, double r_m,
                              double t_s, const ChannelParams& p) {
  e.validate();
  if (e.empty()) return 0.0;
  if (t_s < e.t_s.front()) return 0.0;
  double total = 0.0;
  for (std::size_t i = 1; i < e.t_s.size(); ++i) {
    const double a = e.t_s[i - 1];
    const double b = std::min(e.t_s[i], t_s);
    if (b <= a) break;
    total += convolve_interval(e, e.rate_mol_s[i - 1],
                               e.rate_mol_s[i - 1] +
                                   (e.rate_mol_s[i] - e.rate_mol_s[i - 1]) *
                                       (b - e.t_s[i - 1]) /
                                       (e.t_s[i] - e.t_s[i - 1]),
                               a, b, r_m, t_s, p, 0);
  }
  return total;
}

double SampledField::value(std::size_t ix, std::size_t iy,
                           std::size_t iz) const {
  return values[(iz * dims[1] + iy) * dims[0] + ix];
}

std::array<double, 3> SampledField::center(std::size_t ix, std::size_t iy,
                                           std::size_t iz) const {
  return {origin_m[0] + static_cast<double>(ix) * voxel_m,
          origin_m[1] + static_cast<double>(iy) * voxel_m,
          origin_m[2] + static_cast<double>(iz) * voxel_m};
}

void SampledField::validate() const {
  if (!(voxel_m > 0.0)) throw data_error("sampled field: voxel size must be > 0");
  if (values.size() != dims[0] * dims[1] * dims[2])
    throw data_error("sampled field: dims/values mismatch");
  for (double v : values) {
    if (!std::isfinite(v)) throw data_error("sampled field: non-finite sample");
    if (v < 0.0) throw data_error("sampled field: negative sample");
  }
}

double response_from_initial_distribution(const SampledField& phi,
                                          const std::array<double, 3>& obs_m,
                                          double t_s, const ChannelParams& p) {
  phi.validate();
  if (!(t_s > 0.0))
    throw std::domain_error("response_from_initial_distribution: t must be > 0");
  const double vol = phi.voxel_m * phi.voxel_m * phi.voxel_m;
  double sum = 0.0;
  for (std::size_t iz = 0; iz < phi.dims[2]; ++iz)
    for (std::size_t iy = 0; iy < phi.dims[1]; ++iy)
      for (std::size_t ix = 0; ix < phi.dims[0]; ++ix) {
        const double m = phi.value(ix, iy, iz);
        if (m == 0.0) continue;
        const auto c = phi.center(ix, iy, iz);
        const double dx = obs_m[0] - c[0], dy = obs_m[1] - c[1],
                     dz = obs_m[2] - c[2];
        const double r = std::sqrt(dx * dx + dy * dy + dz * dz);
        sum += m * vol * impulse_response(r, t_s, p, 1.0);
      }
  return sum;
}

double peak_time(double r_m, const ChannelParams& p) {
  if (!(r_m > 0.0))
    throw std::domain_error(
        "peak_time: no interior maximum at r = 0 (monotone decay)");
  // Bracket around the diffusive time scale, then golden-section maximize
  // the log response.
  const double t_diff = r_m * r_m / (6.0 * p.D);
  double lo = t_diff * 1e-3;
  double hi = t_diff;
  auto neg_log_f = [&](double t) {
    return 1.5 * std::log(t) + r_m * r_m / (4.0 * p.D * t) + p.k_alpha * t;
  };
  while (neg_log_f(hi * 2.0) < neg_log_f(hi) && hi < t_diff * 1e6) hi *= 2.0;
  hi *= 2.0;
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
  double f1 = neg_log_f(x1), f2 = neg_log_f(x2);
  for (int it = 0; it < 200 && (b - a) > 1e-12 * b; ++it) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - gr * (b - a);
      f1 = neg_log_f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + gr * (b - a);
      f2 = neg_log_f(x2);
    }
  }
  return 0.5 * (a + b);
}

double ball_average_impulse_response(double center_r_m, double radius_m,
                                     double t_s, const ChannelParams& p,
                                     double alpha0_mol) {
  if (!(radius_m > 0.0))
    throw std::domain_error("ball_average: radius must be > 0");
  const double c = center_r_m, a = radius_m;
  // Weight of the shell at distance s from the source inside the ball:
  // w(s) = pi * s / c * (a^2 - (c - s)^2) for |c - a| <= s <= c + a
  // (full sphere 4*pi*s^2 when the shell lies entirely inside).
  const double s_lo = std::max(0.0, c - a), s_hi = c + a;
  const int n = 512;
  double integral = 0.0;
  for (int i = 0; i < n; ++i) {
    const double s = s_lo + (s_hi - s_lo) * (i + 0.5) / n;
    double w;
    if (s <= a - c) {
      w = 4.0 * kPi * s * s;  // shell fully inside the ball
    } else {
      w = kPi * s / c * (a * a - (c - s) * (c - s));
    }
    integral += w * impulse_response(s, t_s, p, alpha0_mol);
  }
  integral *= (s_hi - s_lo) / n;
  const double vol = 4.0 / 3.0 * kPi * a * a * a;
  return integral / vol;
}

}  // namespace yeastlink::channel
