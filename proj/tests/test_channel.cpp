#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "yeastlink/channel/channel.hpp"
#include "yeastlink/channel/monte_carlo.hpp"
#include "yeastlink/errors.hpp"

using namespace yeastlink::channel;
using yeastlink::config_error;

namespace {

constexpr double kPi = std::numbers::pi;

// Independent quadrature oracle: composite Simpson of the spherical-shell
// integral of the kernel.
double mass_by_quadrature(double t, const ChannelParams& p, double alpha0) {
  const double L = 14.0 * std::sqrt(4.0 * p.D * t);
  const int n = 20000;  // even
  const double h = L / n;
  double sum = 0.0;
  for (int i = 0; i <= n; ++i) {
    const double r = i * h;
    const double f =
        4.0 * kPi * r * r * impulse_response(r, t, p, alpha0);
    const double w = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    sum += w * f;
  }
  return sum * h / 3.0;
}

}  // namespace

TEST_CASE("point value at r = 0") {
  ChannelParams p;
  p.D = 1e-10;
  p.k_alpha = 0.02;
  const double t = 0.4, alpha0 = 2e-18;
  const double expect = alpha0 / std::pow(4.0 * kPi * p.D * t, 1.5) *
                        std::exp(-p.k_alpha * t);
  CHECK(impulse_response(0.0, t, p, alpha0) == doctest::Approx(expect));
}

TEST_CASE("spatial mass equals alpha0 exp(-k t) to 1e-6 relative") {
  ChannelParams p;
  p.D = 1e-10;
  p.k_alpha = 0.05;
  const double alpha0 = 1e-18;
  for (double t : {0.1, 1.0, 10.0}) {
    const double mass = mass_by_quadrature(t, p, alpha0);
    const double expect = alpha0 * std::exp(-p.k_alpha * t);
    CHECK(std::abs(mass - expect) / expect < 1e-6);
  }
}

TEST_CASE("degradation-free kernel reduces to the heat kernel") {
  ChannelParams p;
  p.D = 3e-10;
  p.k_alpha = 0.0;
  const double r = 5e-6, t = 0.2;
  const double heat = std::pow(4.0 * kPi * p.D * t, -1.5) *
                      std::exp(-r * r / (4.0 * p.D * t));
  CHECK(impulse_response(r, t, p, 1.0) == doctest::Approx(heat));
}

TEST_CASE("legacy exponent variant differs and is off by default") {
  ChannelParams p;
  p.D = 1e-10;
  ChannelParams legacy = p;
  legacy.legacy_exponent = true;
  const double r = 1e-5, t = 0.2;
  CHECK(impulse_response(r, t, p, 1.0) != impulse_response(r, t, legacy, 1.0));
  // the legacy form loses the mass-accounting property
  const double mass = mass_by_quadrature(0.5, legacy, 1.0);
  CHECK(std::abs(mass - 1.0) > 1e-3);
}

TEST_CASE("domain errors") {
  ChannelParams p;
  CHECK_THROWS_AS(impulse_response(1e-6, 0.0, p, 1.0), std::domain_error);
  CHECK_THROWS_AS(impulse_response(-1e-6, 1.0, p, 1.0), std::domain_error);
  CHECK_THROWS_AS(peak_time(0.0, p), std::domain_error);
}

TEST_CASE("monotone decay in r and in k_alpha") {
  ChannelParams p;
  p.D = 1e-10;
  p.k_alpha = 0.01;
  const double t = 0.3;
  double prev = impulse_response(0.0, t, p, 1.0);
  for (double r = 1e-6; r < 4e-5; r += 1e-6) {
    const double v = impulse_response(r, t, p, 1.0);
    CHECK(v < prev);
    prev = v;
  }
  ChannelParams hot = p;
  hot.k_alpha = 0.2;
  CHECK(impulse_response(1e-5, t, hot, 1.0) <
        impulse_response(1e-5, t, p, 1.0));
}

TEST_CASE("peak time against the closed-form stationarity") {
  ChannelParams p;
  p.D = 1e-10;
  p.k_alpha = 0.0;
  const double r = 1e-5;
  SUBCASE("no degradation: r^2 / 6D") {
    const double expect = r * r / (6.0 * p.D);
    CHECK(peak_time(r, p) == doctest::Approx(expect).epsilon(1e-6));
    CHECK(expect == doctest::Approx(0.1667).epsilon(1e-3));  // ~0.167 s
    // doubling r quadruples the peak lag
    CHECK(peak_time(2.0 * r, p) ==
          doctest::Approx(4.0 * peak_time(r, p)).epsilon(1e-6));
  }
  SUBCASE("degradation pulls the peak earlier, matching the quadratic root") {
    for (double k : {0.5, 2.0, 10.0}) {
      ChannelParams q = p;
      q.k_alpha = k;
      const double t_num = peak_time(r, q);
      const double t_cf =
          (-1.5 + std::sqrt(2.25 + k * r * r / q.D)) / (2.0 * k);
      CHECK(t_num == doctest::Approx(t_cf).epsilon(1e-6));
      CHECK(t_num < r * r / (6.0 * q.D));
    }
  }
}

TEST_CASE("emission convolution") {
  ChannelParams p;
  p.D = 1e-10;
  p.k_alpha = 0.01;
  const double r = 8e-6;

  SUBCASE("empty schedule gives zero") {
    CHECK(response_from_emission({}, r, 1.0, p) == 0.0);
  }
  SUBCASE("narrow triangular burst approaches the impulse response") {
    // 1e-18 mol released over 2 ms around tau0
    const double tau0 = 0.01, w = 1e-3;
    EmissionSchedule e;
    e.t_s = {tau0 - w, tau0, tau0 + w};
    const double peak_rate = 1e-18 / w;
    e.rate_mol_s = {0.0, peak_rate, 0.0};
    CHECK(e.total_mol() == doctest::Approx(1e-18).epsilon(1e-12));
    const double t = 0.3;
    const double conv = response_from_emission(e, r, t, p);
    const double direct = impulse_response(r, t - tau0, p, 1e-18);
    CHECK(conv == doctest::Approx(direct).epsilon(5e-3));
  }
  SUBCASE("superposition of two bursts") {
    auto burst = [](double tau0) {
      EmissionSchedule e;
      e.t_s = {tau0 - 1e-3, tau0, tau0 + 1e-3};
      e.rate_mol_s = {0.0, 1e-15, 0.0};
      return e;
    };
    EmissionSchedule both;
    both.t_s = {0.009, 0.010, 0.011, 0.049, 0.050, 0.051};
    both.rate_mol_s = {0.0, 1e-15, 0.0, 0.0, 1e-15, 0.0};
    const double t = 0.4;
    const double sum = response_from_emission(burst(0.010), r, t, p) +
                       response_from_emission(burst(0.050), r, t, p);
    CHECK(response_from_emission(both, r, t, p) ==
          doctest::Approx(sum).epsilon(1e-9));
  }
  SUBCASE("linearity in the emission amplitude") {
    EmissionSchedule e;
    e.t_s = {0.0, 0.1, 0.2};
    e.rate_mol_s = {1e-16, 3e-16, 0.0};
    EmissionSchedule e2 = e;
    for (double& v : e2.rate_mol_s) v *= 7.0;
    const double t = 0.5;
    CHECK(response_from_emission(e2, r, t, p) ==
          doctest::Approx(7.0 * response_from_emission(e, r, t, p))
              .epsilon(1e-9));
  }
  SUBCASE("invalid schedules are rejected") {
    EmissionSchedule bad;
    bad.t_s = {0.0, 0.0};
    bad.rate_mol_s = {1.0, 1.0};
    CHECK_THROWS_AS(response_from_emission(bad, r, 1.0, p),
                    yeastlink::data_error);
  }
}

TEST_CASE("initial-distribution propagation") {
  ChannelParams p;
  p.D = 1e-10;
  p.k_alpha = 0.03;

  SampledField phi;
  phi.voxel_m = 1e-6;
  phi.dims = {1, 1, 1};
  phi.origin_m = {0, 0, 0};
  const double conc = 2.0;  // mol/m^3 in the single voxel
  phi.values = {conc};
  const double mass = conc * 1e-18;

  SUBCASE("single voxel reduces to the impulse response") {
    const double t = 0.2;
    const std::array<double, 3> obs{1e-5, 0, 0};
    CHECK(response_from_initial_distribution(phi, obs, t, p) ==
          doctest::Approx(impulse_response(1e-5, t, p, mass)));
  }
  SUBCASE("translation equivariance") {
    SampledField shifted = phi;
    shifted.origin_m = {3e-6, -2e-6, 5e-6};
    const std::array<double, 3> obs{1.3e-5, -2e-6, 5e-6};
    CHECK(response_from_initial_distribution(shifted, obs, 0.2, p) ==
          doctest::Approx(response_from_initial_distribution(
              phi, {1e-5, 0, 0}, 0.2, p)));
  }
  SUBCASE("ball of mass spreads while conserving its integral") {
    SampledField ball;
    ball.voxel_m = 2e-6;
    ball.dims = {5, 5, 5};
    ball.origin_m = {-4e-6, -4e-6, -4e-6};
    ball.values.assign(125, 1.0);
    ChannelParams pure = p;
    pure.k_alpha = 0.0;
    const double early =
        response_from_initial_distribution(ball, {0, 0, 0}, 0.01, pure);
    const double late =
        response_from_initial_distribution(ball, {0, 0, 0}, 5.0, pure);
    CHECK(late < early);  // pointwise decay
    // integral check: sum the field over a wide grid at the late time
    double total = 0.0;
    const double step = 4e-6;
    for (int ix = -25; ix <= 25; ++ix)
      for (int iy = -25; iy <= 25; ++iy)
        for (int iz = -25; iz <= 25; ++iz)
          total += response_from_initial_distribution(
                       ball, {ix * step, iy * step, iz * step}, 5.0, pure) *
                   step * step * step;
    const double mass0 = 1.0 * std::pow(2e-6, 3) * 125;
    CHECK(total == doctest::Approx(mass0).epsilon(0.02));
  }
  SUBCASE("non-finite samples rejected") {
    SampledField bad = phi;
    bad.values = {std::nan("")};
    CHECK_THROWS_AS(
        response_from_initial_distribution(bad, {0, 0, 0}, 1.0, p),
        yeastlink::data_error);
  }
}

TEST_CASE("ball average approaches the center value for small probes") {
  ChannelParams p;
  p.D = 1e-10;
  p.k_alpha = 0.01;
  const double t = 0.25, r = 1e-5;
  const double center = impulse_response(r, t, p, 1.0);
  CHECK(ball_average_impulse_response(r, 2e-7, t, p, 1.0) ==
        doctest::Approx(center).epsilon(1e-3));
}

// ---- Brownian-walk estimator ------------------------------------------

TEST_CASE("mc preconditions") {
  ChannelParams p;
  McSource src;
  src.alpha0_mol = 1e-18;
  McSettings s;
  s.n_particles = 500;  // too few
  s.probe.radius_m = 1e-6;
  CHECK_THROWS_AS(mc_simulate(p, src, s), config_error);
  s.n_particles = 2000;
  s.probe.radius_m = 0.0;
  CHECK_THROWS_AS(mc_simulate(p, src, s), std::domain_error);
  s.probe.radius_m = 1e-6;
  s.dt_s = 10.0;
  ChannelParams hot = p;
  hot.k_alpha = 0.05;  // k dt = 0.5 >= 0.1
  CHECK_THROWS_AS(mc_simulate(hot, src, s), config_error);
}

TEST_CASE("frozen particles stay in a probe centered on the source") {
  ChannelParams p;
  p.D = 1e-30;  // effectively frozen
  p.k_alpha = 1.0;
  McSource src;
  src.alpha0_mol = 1e-18;
  McSettings s;
  s.n_particles = 20000;
  s.dt_s = 0.01;
  s.horizon_s = 0.5;
  s.sample_times_s = {0.5};
  s.seed = 3;
  s.probe.center_m = {0, 0, 0};
  s.probe.radius_m = 1e-6;
  const McSeries out = mc_simulate(p, src, s);
  REQUIRE(out.t_s.size() == 1);
  CHECK(out.n_in_probe[0] == out.n_alive[0]);
  // survivors ~ N exp(-k t)
  const double expect = 20000.0 * std::exp(-1.0 * 0.5);
  CHECK(out.n_alive[0] == doctest::Approx(expect).epsilon(0.05));
}

TEST_CASE("strong degradation empties the channel") {
  ChannelParams p;
  p.D = 1e-10;
  p.k_alpha = 50.0;
  McSource src;
  src.alpha0_mol = 1e-18;
  McSettings s;
  s.n_particles = 5000;
  s.dt_s = 1e-3;
  s.horizon_s = 0.5;  // 25 lifetimes
  s.sample_times_s = {0.5};
  s.seed = 5;
  s.probe.center_m = {0, 0, 0};
  s.probe.radius_m = 1e-5;
  const McSeries out = mc_simulate(p, src, s);
  CHECK(out.n_alive[0] == 0);
  CHECK(out.estimate_mol_m3[0] == 0.0);
}

TEST_CASE("estimate agrees with the kernel within sampling error") {
  ChannelParams p;
  p.D = 1e-10;
  p.k_alpha = 0.05;
  McSource src;
  src.alpha0_mol = 1e-18;
  McSettings s;
  s.n_particles = 30000;
  s.dt_s = 2e-3;
  s.horizon_s = 0.32;
  s.sample_times_s = {0.12, 0.32};
  s.seed = 12345;
  s.probe.center_m = {1e-5, 0, 0};
  s.probe.radius_m = 5e-6;
  const McSeries out = mc_simulate(p, src, s);
  for (std::size_t i = 0; i < out.t_s.size(); ++i) {
    const double analytic = ball_average_impulse_response(
        1e-5, 5e-6, out.t_s[i], p, src.alpha0_mol);
    const double sigma = out.stderr_mol_m3[i];
    REQUIRE(sigma > 0.0);
    CHECK(std::abs(out.estimate_mol_m3[i] - analytic) < 4.0 * sigma);
  }
}

TEST_CASE("fixed seed reproduces; thread count does not matter") {
  ChannelParams p;
  p.D = 1e-10;
  p.k_alpha = 0.02;
  McSource src;
  src.alpha0_mol = 1e-18;
  McSettings s;
  s.n_particles = 20000;
  s.dt_s = 2e-3;
  s.horizon_s = 0.2;
  s.sample_times_s = {0.1, 0.2};
  s.seed = 99;
  s.probe.center_m = {8e-6, 0, 0};
  s.probe.radius_m = 4e-6;
  s.n_threads = 1;
  const McSeries serial = mc_simulate(p, src, s);
  s.n_threads = 4;
  const McSeries parallel = mc_simulate(p, src, s);
  CHECK(serial.n_in_probe == parallel.n_in_probe);
  CHECK(serial.n_alive == parallel.n_alive);
  s.seed = 100;
  const McSeries other = mc_simulate(p, src, s);
  CHECK(other.n_in_probe != serial.n_in_probe);
}

TEST_CASE("distributed emission conserves the released mass") {
  ChannelParams p;
  p.D = 1e-10;
  p.k_alpha = 0.0;
  EmissionSchedule e;
  e.t_s = {0.0, 0.1, 0.2};
  e.rate_mol_s = {0.0, 2e-17, 0.0};
  McSource src;
  src.emission = e;
  McSettings s;
  s.n_particles = 10000;
  s.dt_s = 1e-3;
  s.horizon_s = 0.25;
  s.sample_times_s = {0.05, 0.25};
  s.seed = 7;
  s.probe.center_m = {0, 0, 0};
  s.probe.radius_m = 1e-5;
  const McSeries out = mc_simulate(p, src, s);
  // halfway through the burst roughly half the particles exist
  CHECK(out.n_alive[0] == doctest::Approx(2500).epsilon(0.2));
  CHECK(out.n_alive[1] == 10000);
}

TEST_CASE("prescribed protease field accelerates losses") {
  ChannelParams p;
  p.D = 1e-10;
  p.k_alpha = 0.01;
  p.k_re = 5.0;  // 1/((mol/m^3) s)
  McSource src;
  src.alpha0_mol = 1e-18;
  McSettings s;
  s.n_particles = 20000;
  s.dt_s = 1e-3;
  s.horizon_s = 0.3;
  s.sample_times_s = {0.3};
  s.seed = 21;
  s.probe.center_m = {0, 0, 0};
  s.probe.radius_m = 2e-5;
  s.bar1_field = [](const std::array<double, 3>&, double) { return 0.5; };
  const McSeries with_b = mc_simulate(p, src, s);
  ChannelParams no_re = p;
  no_re.k_re = 0.0;
  const McSeries without = mc_simulate(no_re, src, s);
  // expected survival ratio exp(-k_re * B * t) = exp(-0.75)
  const double ratio = static_cast<double>(with_b.n_alive[0]) /
                       static_cast<double>(without.n_alive[0]);
  CHECK(ratio == doctest::Approx(std::exp(-0.75)).epsilon(0.08));
}
