#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "yeastlink/rx/model.hpp"
#include "yeastlink/stimulus.hpp"

namespace yeastlink::harness {

enum class Scenario { rx_only_synthetic, e2e_tx_channel_rx, channel_only, mc_oracle };
Scenario parse_scenario(const std::string& name);
std::string scenario_name(Scenario s);

// One experiment, parsed from a `key = value` config file. Unknown keys are
// rejected; missing scenario-required keys raise config_error naming the key.
struct ExperimentConfig {
  Scenario scenario = Scenario::rx_only_synthetic;
  rx::Strain strain = rx::Strain::bar1_delta;
  rx::InputMode input_mode = rx::InputMode::Prescribed;

  // pulse protocol (pheromone for rx_only, galactose for e2e)
  double pulse_amplitude_uM = 10.0;
  double pulse_width_min = 1.0;
  double pulse_gap_min = 120.0;
  int pulse_count = 1;
  double pulse_start_min = 0.0;

  double horizon_min = 360.0;
  double sample_dt_min = 0.5;

  // geometry / channel
  double r_rx_um = 10.0;
  double channel_D_m2s = 1.0e-10;
  double channel_k_alpha_s = 1.0e-4;
  double alpha0_mol = 1.0e-18;      // impulse normalization (moles released)
  double cell_volume_um3 = 42.0;
  double emission_scale = 1.0;      // bulk-culture scaling of the sender output

  // Monte Carlo oracle
  long mc_particles = 100000;
  double mc_dt_s = 2.0e-3;
  double mc_horizon_s = 0.5;
  double probe_radius_um = 5.0;
  std::vector<double> probe_times_s{0.06, 0.10, 0.167, 0.28, 0.45};
  double bar1_field_nM = 0.0;
  double k_re_Ms = 0.0;  // 1/(M s); engaged in the Monte Carlo only

  // event detection
  double event_prominence = 0.2;
  double event_min_separation_min = 30.0;

  std::string tx_params_path = "params/tx_default.params";
  std::string rx_params_path = "params/rx_default.params";
  std::string out_dir = "out";
  std::uint64_t seed = 1;
  double rtol = 1e-6;
  double atol = 1e-9;

  std::string source_text;  // raw config bytes, hashed into the manifest

  StimulusProfile pulse_profile() const;  // amplitudes converted to nM
  void validate() const;
};

ExperimentConfig load_config(const std::string& path);
ExperimentConfig parse_config_text(const std::string& text,
                                   const std::string& origin);

}  // namespace yeastlink::harness
