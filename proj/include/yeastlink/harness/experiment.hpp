#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "yeastlink/channel/monte_carlo.hpp"
#include "yeastlink/events.hpp"
#include "yeastlink/harness/config.hpp"
#include "yeastlink/trajectory.hpp"

namespace yeastlink::harness {

// Per-probe oracle comparison for the Monte Carlo scenario.
struct McProbeCheck {
  double t_s = 0.0;
  double estimate_nM = 0.0;
  double stderr_nM = 0.0;
  double analytic_nM = 0.0;
  long count = 0;
  double sigmas_off = 0.0;
  double rel_error = 0.0;
  bool ok = false;
};

struct ExperimentResult {
  std::map<std::string, Trajectory> trajectories;
  EventReport events;
  std::vector<double> pulse_window_peaks;  // max Fus1 fold per pulse window
  double basal_fus1_nM = 0.0;
  double basal_fus1_mrna_nM = 0.0;
  double mrna_fold_peak = 0.0;
  double mrna_fold_peak_t_min = 0.0;
  double protein_fold_peak = 0.0;
  double protein_fold_peak_t_min = 0.0;
  std::vector<McProbeCheck> mc_checks;
  std::vector<std::string> written_files;
};

// Executes the configured scenario and writes trajectories, reports, plots
// and the run manifest under cfg.out_dir.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

// Three equal pulses with the protocol spacing (width + gap between rising
// edges); n = 1 reduces to the single-pulse protocol.
StimulusProfile three_pulse_protocol(double amplitude_nM,
                                     double width_min = 1.0,
                                     double gap_min = 120.0, int n = 3);

// Runs one experiment per value of `key`, across a small worker pool, each
// into out_root/<key>=<value>/. Returns per-value results in input order.
std::vector<ExperimentResult> run_sweep(const ExperimentConfig& base,
                                        const std::string& key,
                                        const std::vector<std::string>& values,
                                        const std::string& out_root,
                                        int n_workers = 0);

}  // namespace yeastlink::harness
