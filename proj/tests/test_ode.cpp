#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "yeastlink/errors.hpp"
#include "yeastlink/ode/solver.hpp"

using namespace yeastlink;
using ode::OdeProblem;
using ode::SolverSettings;

namespace {

OdeProblem linear_decay(double lambda, double y0, double t1) {
  OdeProblem p;
  p.rhs = [lambda](double, std::span<const double> y, std::span<double> d) {
    d[0] = -lambda * y[0];
  };
  p.y0 = {y0};
  p.t0 = 0.0;
  p.t1 = t1;
  return p;
}

}  // namespace

TEST_CASE("linear decay matches the closed form within 10 rtol") {
  const double lambda = 0.7;
  SolverSettings s;
  s.rtol = 1e-6;
  s.atol = 1e-12;
  auto prob = linear_decay(lambda, 1.0, 10.0 / lambda);
  Trajectory traj = ode::integrate(prob, s, {"y"});
  for (std::size_t i = 0; i < traj.n_times(); ++i) {
    const double expect = std::exp(-lambda * traj.times()[i]);
    CHECK(traj.value(i, 0) ==
          doctest::Approx(expect).epsilon(10 * s.rtol));
  }
}

TEST_CASE("harmonic oscillator energy drift below 1e-5 over 100 periods") {
  OdeProblem p;
  p.rhs = [](double, std::span<const double> y, std::span<double> d) {
    d[0] = y[1];
    d[1] = -y[0];
  };
  p.y0 = {1.0, 0.0};
  p.t0 = 0.0;
  p.t1 = 100.0 * 2.0 * M_PI;
  SolverSettings s;
  s.rtol = 1e-8;
  s.atol = 1e-12;
  s.h_max = 1e9;
  s.project_nonnegative = false;  // oscillator states swing negative
  Trajectory traj = ode::integrate(p, s, {"q", "v"});
  const std::size_t last = traj.n_times() - 1;
  const double energy =
      traj.value(last, 0) * traj.value(last, 0) +
      traj.value(last, 1) * traj.value(last, 1);
  CHECK(std::abs(energy - 1.0) < 1e-5);
}

TEST_CASE("y' = 0 is integrated exactly") {
  OdeProblem p;
  p.rhs = [](double, std::span<const double>, std::span<double> d) {
    d[0] = 0.0;
  };
  p.y0 = {3.25};
  p.t0 = 0.0;
  p.t1 = 100.0;
  Trajectory a = ode::integrate(p, SolverSettings{}, {"y"});
  Trajectory f = ode::fixed_step_reference(p, 1.0, {"y"});
  for (std::size_t i = 0; i < a.n_times(); ++i) CHECK(a.value(i, 0) == 3.25);
  for (std::size_t i = 0; i < f.n_times(); ++i) CHECK(f.value(i, 0) == 3.25);
}

TEST_CASE("fixed-step reference shows 4th-order convergence") {
  // smooth problem with a known solution: y' = y*cos(t), y = exp(sin(t))
  auto make = [] {
    OdeProblem p;
    p.rhs = [](double t, std::span<const double> y, std::span<double> d) {
      d[0] = y[0] * std::cos(t);
    };
    p.y0 = {1.0};
    p.t0 = 0.0;
    p.t1 = 6.0;
    return p;
  };
  const double exact = std::exp(std::sin(6.0));
  auto err_at = [&](double h) {
    Trajectory t = ode::fixed_step_reference(make(), h, {"y"});
    return std::abs(t.value(t.n_times() - 1, 0) - exact);
  };
  const double e1 = err_at(0.05);
  const double e2 = err_at(0.025);
  const double order = std::log2(e1 / e2);
  CHECK(order > 3.8);  // halving h cuts the error ~16x
}

TEST_CASE("adaptive controller keeps at least 4th-order convergence") {
  auto run = [](double rtol) {
    OdeProblem p;
    p.rhs = [](double t, std::span<const double> y, std::span<double> d) {
      d[0] = y[0] * std::cos(t);
    };
    p.y0 = {1.0};
    p.t0 = 0.0;
    p.t1 = 6.0;
    SolverSettings s;
    s.rtol = rtol;
    s.atol = 1e-14;
    Trajectory t = ode::integrate(p, s, {"y"});
    return std::abs(t.value(t.n_times() - 1, 0) - std::exp(std::sin(6.0)));
  };
  // error tracks the requested tolerance across two decades
  const double e_loose = run(1e-5);
  const double e_tight = run(1e-8);
  CHECK(e_loose < 1e-4);
  CHECK(e_tight < 1e-7);
  CHECK(e_tight < e_loose);
}

TEST_CASE("breakpoint-aware restarts reproduce a brute-force reference") {
  // square-wave forcing: y' = u(t) - y with a jump at t = 2.5
  auto forcing = [](double t) { return (t >= 2.5 && t < 5.0) ? 4.0 : 0.5; };
  OdeProblem p;
  p.rhs = [forcing](double t, std::span<const double> y, std::span<double> d) {
    d[0] = forcing(t) - y[0];
  };
  p.y0 = {0.0};
  p.t0 = 0.0;
  p.t1 = 8.0;
  p.breakpoints = {2.5, 5.0};

  SolverSettings s;
  s.rtol = 1e-8;
  s.atol = 1e-12;
  Trajectory adaptive = ode::integrate(p, s, {"y"});
  Trajectory reference = ode::fixed_step_reference(p, 1e-4, {"y"});

  const double y_end_a = adaptive.value(adaptive.n_times() - 1, 0);
  const double y_end_r = reference.value(reference.n_times() - 1, 0);
  CHECK(y_end_a == doctest::Approx(y_end_r).epsilon(5 * s.rtol));

  // the breakpoints appear as output samples
  bool saw = false;
  for (double t : adaptive.times()) saw = saw || t == 2.5;
  CHECK(saw);
}

TEST_CASE("identical inputs give bit-identical trajectories") {
  auto run = [] {
    OdeProblem p;
    p.rhs = [](double t, std::span<const double> y, std::span<double> d) {
      d[0] = std::sin(t) - 0.3 * y[0];
      d[1] = y[0] - 0.1 * y[1];
    };
    p.y0 = {1.0, 0.5};
    p.t0 = 0.0;
    p.t1 = 25.0;
    p.breakpoints = {5.0};
    SolverSettings s;
    s.sample_dt = 0.25;
    return ode::integrate(p, s, {"a", "b"});
  };
  Trajectory t1 = run();
  Trajectory t2 = run();
  REQUIRE(t1.n_times() == t2.n_times());
  for (std::size_t i = 0; i < t1.n_times(); ++i) {
    CHECK(t1.times()[i] == t2.times()[i]);
    CHECK(t1.value(i, 0) == t2.value(i, 0));
    CHECK(t1.value(i, 1) == t2.value(i, 1));
  }
}

TEST_CASE("uniform sampling emits the requested grid plus breakpoints") {
  OdeProblem p;
  p.rhs = [](double, std::span<const double> y, std::span<double> d) {
    d[0] = -y[0];
  };
  p.y0 = {1.0};
  p.t0 = 0.0;
  p.t1 = 2.0;
  p.breakpoints = {0.731};
  SolverSettings s;
  s.sample_dt = 0.5;
  Trajectory t = ode::integrate(p, s, {"y"});
  std::vector<double> expect{0.0, 0.5, 0.731, 1.0, 1.5, 2.0};
  REQUIRE(t.n_times() == expect.size());
  for (std::size_t i = 0; i < expect.size(); ++i)
    CHECK(t.times()[i] == doctest::Approx(expect[i]).epsilon(1e-12));
  // Hermite samples stay close to the true solution
  for (std::size_t i = 0; i < t.n_times(); ++i)
    CHECK(t.value(i, 0) ==
          doctest::Approx(std::exp(-t.times()[i])).epsilon(1e-5));
}

TEST_CASE("step budget exhaustion raises a numeric error") {
  OdeProblem p = linear_decay(1.0, 1.0, 1e6);
  SolverSettings s;
  s.max_steps = 10;
  CHECK_THROWS_AS(ode::integrate(p, s, {"y"}), numeric_error);
}

TEST_CASE("h_min underflow raises a stiffness error naming the time") {
  OdeProblem p;
  // derivative with an integrable singularity the controller cannot cross
  p.rhs = [](double t, std::span<const double> y, std::span<double> d) {
    d[0] = -y[0] / (1.0001 - t > 0 ? (1.0001 - t) * (1.0001 - t) : 1e-300);
  };
  p.y0 = {1.0};
  p.t0 = 0.0;
  p.t1 = 2.0;
  SolverSettings s;
  s.h_min = 1e-5;
  try {
    ode::integrate(p, s, {"y"});
    FAIL("expected numeric_error");
  } catch (const numeric_error& e) {
    CHECK(std::string(e.what()).find("t=") != std::string::npos);
  }
}

TEST_CASE("non-negativity projection clamps and counts") {
  OdeProblem p;
  // pushes hard below zero; the projected solution floors at 0
  p.rhs = [](double, std::span<const double> y, std::span<double> d) {
    d[0] = -2.0 - 0.1 * y[0];
  };
  p.y0 = {0.5};
  p.t0 = 0.0;
  p.t1 = 5.0;
  SolverSettings s;
  ode::IntegrationStats stats;
  Trajectory t = ode::integrate(p, s, {"y"}, &stats);
  for (std::size_t i = 0; i < t.n_times(); ++i) CHECK(t.value(i, 0) >= 0.0);
  CHECK(stats.projection_events > 0);
}
