#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "yeastlink/channel/channel.hpp"

namespace yeastlink::channel {

// Spherical counting probe.
struct ProbeSpec {
  std::array<double, 3> center_m{0, 0, 0};
  double radius_m = 0.0;
};

struct McSettings {
  long n_particles = 100000;  // >= 1000
  double dt_s = 1e-3;         // k_alpha * dt must stay below 0.1
  double horizon_s = 1.0;
  std::vector<double> sample_times_s;  // snapped onto the dt grid
  std::uint64_t seed = 1;
  int n_threads = 0;  // 0 = hardware concurrency; result independent of it
  ProbeSpec probe;
  // Prescribed protease field in mol/m^3 (position, time); engaged when
  // k_re > 0. Empty means no protease anywhere.
  std::function<double(const std::array<double, 3>&, double)> bar1_field;
};

// Either an instantaneous point release or a distributed-in-time emission.
struct McSource {
  double alpha0_mol = 0.0;                  // impulse mass (impulse mode)
  std::array<double, 3> position_m{0, 0, 0};
  std::optional<EmissionSchedule> emission;  // overrides impulse when set
};

struct McSeries {
  std::vector<double> t_s;
  std::vector<double> estimate_mol_m3;
  std::vector<double> stderr_mol_m3;
  std::vector<long> n_alive;
  std::vector<long> n_in_probe;
};

// Brownian-walk estimate of the channel concentration at the probe.
// Per-axis step variance is 2 D dt; survival per step is
// exp(-(k_alpha + k_re * B_local) * dt). Particles are processed in fixed
// chunks with chunk-indexed RNG streams, so the result depends only on the
// seed, never on the thread count.
McSeries mc_simulate(const ChannelParams& p, const McSource& source,
                     const McSettings& settings);

// CSV: "time_s,estimate_nM,stderr_nM,n_alive".
void write_mc_csv(const McSeries& series, const std::string& path);

}  // namespace yeastlink::channel
