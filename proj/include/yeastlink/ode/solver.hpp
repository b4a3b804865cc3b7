#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "yeastlink/trajectory.hpp"

namespace yeastlink::ode {

// Derivative callback: rhs(t, y, dydt). Must fill dydt completely.
using RhsFn =
    std::function<void(double, std::span<const double>, std::span<double>)>;

struct SolverSettings {
  double rtol = 1e-6;
  double atol = 1e-9;          // nM
  double h_init = 1e-3;        // minutes; <=0 picks one automatically
  double h_min = 1e-12;
  double h_max = 50.0;
  long max_steps = 2'000'000;
  // States dipping below -atol are clamped to zero and counted; smaller
  // negative wiggles are zeroed silently. Off for general-purpose systems
  // whose states may be negative.
  bool project_nonnegative = true;
  double projection_floor() const { return -atol; }
  // Uniform output spacing; <=0 emits accepted steps only.
  double sample_dt = 0.0;
};

struct OdeProblem {
  RhsFn rhs;
  std::vector<double> y0;
  double t0 = 0.0;
  double t1 = 0.0;
  // Discontinuity times of the driving input. Integration restarts at each
  // one; no step straddles them.
  std::vector<double> breakpoints;
};

struct IntegrationStats {
  long steps_accepted = 0;
  long steps_rejected = 0;
  long rhs_evaluations = 0;
  long projection_events = 0;  // clamps below the projection floor
  double h_last = 0.0;
};

// Adaptive Dormand-Prince 5(4) with embedded error control, breakpoint-aware
// restarts and non-negativity projection. Output contains every accepted step
// and every breakpoint; with sample_dt > 0 a uniform grid (4th-order Hermite
// interpolation inside steps) is emitted instead, plus the breakpoints.
//
// Throws numeric_error naming the failing time on h_min underflow
// (stiffness) and on step-budget exhaustion; deterministic for fixed inputs.
Trajectory integrate(const OdeProblem& prob, const SolverSettings& settings,
                     std::vector<std::string> species_names,
                     IntegrationStats* stats = nullptr);

// Classical fixed-step 4th-order scheme, used as a brute-force oracle in
// tests. Steps are shortened per segment so every breakpoint is hit exactly.
Trajectory fixed_step_reference(const OdeProblem& prob, double h,
                                std::vector<std::string> species_names);

// Writes a one-line CSV sidecar (header + one row) with the run diagnostics.
void write_stats_csv(const IntegrationStats& stats, const std::string& path);

}  // namespace yeastlink::ode
