#include "yeastlink/harness/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <thread>

#include "yeastlink/channel/channel.hpp"
#include "yeastlink/errors.hpp"
#include "yeastlink/harness/compare.hpp"
#include "yeastlink/harness/events.hpp"
#include "yeastlink/harness/outputs.hpp"
#include "yeastlink/ode/solver.hpp"
#include "yeastlink/paramfile.hpp"
#include "yeastlink/tx/model.hpp"

namespace yeastlink::harness {

namespace {

std::string fmt17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

ode::SolverSettings solver_settings(const ExperimentConfig& cfg) {
  // the model wrappers pin their own stability caps on h
  ode::SolverSettings s;
  s.rtol = cfg.rtol;
  s.atol = cfg.atol;
  return s;
}

// Linear interpolator over a precomputed series; constant beyond the ends.
struct Series {
  std::vector<double> t;
  std::vector<double> v;
  double operator()(double x) const {
    if (t.empty()) return 0.0;
    if (x <= t.front()) return v.front();
    if (x >= t.back()) return v.back();
    auto it = std::upper_bound(t.begin(), t.end(), x);
    const std::size_t hi = static_cast<std::size_t>(it - t.begin());
    const std::size_t lo = hi - 1;
    const double w = (x - t[lo]) / (t[hi] - t[lo]);
    return v[lo] + w * (v[hi] - v[lo]);
  }
};

Trajectory fold_trajectory(const Trajectory& rx_traj, double basal_mrna,
                           double basal_fus1) {
  std::vector<double> times = rx_traj.times();
  const auto mrna = rx::fold_change(rx_traj, "Fus1_mRNA", basal_mrna);
  const auto prot = rx::fold_change(rx_traj, "Fus1", basal_fus1);
  std::vector<double> vals;
  vals.reserve(times.size() * 2);
  for (std::size_t i = 0; i < times.size(); ++i) {
    vals.push_back(mrna[i]);
    vals.push_back(prot[i]);
  }
  return Trajectory({"Fus1_mRNA_fold", "Fus1_fold"}, std::move(times),
                    std::move(vals));
}

void write_events_csv(const EventReport& ev, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw data_error("cannot open '" + path + "' for writing");
  f << "event_index,time_min\n";
  for (std::size_t i = 0; i < ev.event_times_min.size(); ++i)
    f << i << ',' << fmt17(ev.event_times_min[i]) << '\n';
  f << "# count= " << ev.event_count << " rate_per_hour= "
    << fmt17(ev.rate_per_hour) << '\n';
}

std::vector<double> window_peaks(const Trajectory& fold,
                                 const StimulusProfile& stim,
                                 double horizon_min) {
  std::vector<double> peaks;
  const auto& segs = stim.segments();
  const auto series = fold.column("Fus1_fold");
  const auto& times = fold.times();
  for (std::size_t k = 0; k < segs.size(); ++k) {
    const double w0 = segs[k].t_start;
    const double w1 = k + 1 < segs.size() ? segs[k + 1].t_start : horizon_min;
    double best = 0.0;
    for (std::size_t i = 0; i < times.size(); ++i)
      if (times[i] >= w0 && times[i] < w1) best = std::max(best, series[i]);
    peaks.push_back(best);
  }
  return peaks;
}

struct LoadedRx {
  rx::RxParams params;
  ParamFileInfo info;
};

LoadedRx load_rx(const ExperimentConfig& cfg) {
  LoadedRx out;
  out.info = rx::load_params(cfg.rx_params_path, out.params);
  rx::apply_strain(out.params, cfg.strain);
  return out;
}

void write_common_manifest(const ExperimentConfig& cfg,
                           std::vector<ManifestEntry> extra,
                           std::vector<std::string>& files) {
  std::vector<ManifestEntry> m{
      {"tool", "yeastlink"},
      {"scenario", scenario_name(cfg.scenario)},
      {"strain", rx::strain_name(cfg.strain)},
      {"config_hash", hash_hex(cfg.source_text)},
      {"seed", std::to_string(cfg.seed)},
      {"rtol", fmt17(cfg.rtol)},
      {"atol", fmt17(cfg.atol)},
      {"sample_dt_min", fmt17(cfg.sample_dt_min)},
  };
  for (auto& e : extra) m.push_back(std::move(e));
  const std::string path = cfg.out_dir + "/manifest.json";
  write_manifest(path, m);
  files.push_back(path);
}

ExperimentResult run_rx_like(const ExperimentConfig& cfg,
                             const rx::InputFn& alpha_input,
                             const StimulusProfile& shading,
                             std::vector<double> breakpoints,
                             std::vector<ManifestEntry> manifest_extra) {
  ExperimentResult res;
  LoadedRx loaded = load_rx(cfg);
  const auto settings = solver_settings(cfg);

  const rx::State basal = rx::basal_state(loaded.params, settings);
  res.basal_fus1_nM = basal[rx::sp::Fus1];
  res.basal_fus1_mrna_nM = basal[rx::sp::Fus1_mRNA];

  ode::IntegrationStats stats;
  Trajectory raw = rx::simulate(loaded.params, cfg.input_mode, alpha_input,
                                basal, 0.0, cfg.horizon_min,
                                std::move(breakpoints), settings, &stats);
  if (stats.projection_events * 1000 > stats.steps_accepted)
    std::fprintf(stderr,
                 "warning: %ld of %ld accepted steps clamped below the "
                 "projection floor; check the parameter set\n",
                 stats.projection_events, stats.steps_accepted);
  Trajectory uniform = raw.resampled(cfg.sample_dt_min);
  Trajectory fold =
      fold_trajectory(uniform, res.basal_fus1_mrna_nM, res.basal_fus1_nM);

  res.mrna_fold_peak =
      fold.max_value("Fus1_mRNA_fold", &res.mrna_fold_peak_t_min);
  res.protein_fold_peak =
      fold.max_value("Fus1_fold", &res.protein_fold_peak_t_min);
  res.events = detect_events(fold, "Fus1_fold", cfg.event_prominence,
                             cfg.event_min_separation_min);
  res.pulse_window_peaks = window_peaks(fold, shading, cfg.horizon_min);

  ensure_dir(cfg.out_dir);
  raw.write_csv_file(cfg.out_dir + "/rx_trajectory_steps.csv");
  uniform.write_csv_file(cfg.out_dir + "/rx_trajectory.csv");
  fold.write_csv_file(cfg.out_dir + "/rx_fold_change.csv");
  ode::write_stats_csv(stats, cfg.out_dir + "/solver_stats.csv");
  write_events_csv(res.events, cfg.out_dir + "/events.csv");
  write_svg_plot(cfg.out_dir + "/rx_fold_change.svg",
                 "Receiver output (fold change), " +
                     rx::strain_name(cfg.strain),
                 {{"Fus1_mRNA fold", fold.times(), fold.column("Fus1_mRNA_fold")},
                  {"Fus1 fold", fold.times(), fold.column("Fus1_fold")}},
                 shading, cfg.horizon_min);
  for (const char* n :
       {"/rx_trajectory_steps.csv", "/rx_trajectory.csv", "/rx_fold_change.csv",
        "/solver_stats.csv", "/events.csv", "/rx_fold_change.svg"})
    res.written_files.push_back(cfg.out_dir + n);

  manifest_extra.push_back({"rx_params_schema", loaded.info.schema});
  manifest_extra.push_back({"rx_params_hash", loaded.info.hash_hex});
  write_common_manifest(cfg, std::move(manifest_extra), res.written_files);

  res.trajectories.emplace("rx", std::move(uniform));
  res.trajectories.emplace("rx_fold", std::move(fold));
  return res;
}

ExperimentResult run_rx_only(const ExperimentConfig& cfg) {
  const StimulusProfile stim = cfg.pulse_profile();
  rx::InputFn input;
  if (cfg.input_mode == rx::InputMode::Prescribed) {
    input = [stim](double t) { return stim.level_at(t); };
  } else {
    // Forced mode drives d[alpha]/dt with an inflow rate; the configured
    // amplitude is delivered over each pulse width.
    input = [stim](double t) {
      return stim.level_at(t);  // nM/min inflow while the pulse is on
    };
  }
  return run_rx_like(cfg, input, stim, stim.breakpoints(), {});
}

ExperimentResult run_e2e(const ExperimentConfig& cfg) {
  // Transmitter: galactose pulses gate pheromone production.
  tx::TxParams txp;
  const ParamFileInfo tx_info = tx::load_params(cfg.tx_params_path, txp);
  tx::TxInputs inputs;
  inputs.galactose = cfg.pulse_profile();

  auto settings = solver_settings(cfg);

  // settle the galactose network before the protocol starts
  std::array<double, tx::kNumSpecies> y0{};
  {
    tx::TxInputs quiet;
    Trajectory pre = tx::simulate(txp, quiet,
                                  std::span<const double>(y0.data(), y0.size()),
                                  0.0, 3000.0, settings);
    const auto last = pre.row(pre.n_times() - 1);
    std::copy(last.begin(), last.end(), y0.begin());
  }

  ode::IntegrationStats tx_stats;
  Trajectory tx_raw = tx::simulate(
      txp, inputs, std::span<const double>(y0.data(), y0.size()), 0.0,
      cfg.horizon_min, settings, &tx_stats);
  Trajectory tx_uniform = tx_raw.resampled(cfg.sample_dt_min);

  // secretion -> channel emission (SI)
  const tx::EmissionSeries em = tx::secretion_series(tx_uniform, txp);
  channel::EmissionSchedule sched;
  sched.t_s.reserve(em.t_min.size());
  sched.rate_mol_s.reserve(em.t_min.size());
  for (std::size_t i = 0; i < em.t_min.size(); ++i) {
    sched.t_s.push_back(min_to_s(em.t_min[i]));
    sched.rate_mol_s.push_back(cfg.emission_scale *
                               release_rate_mol_s(em.rate_nM_min[i],
                                                  cfg.cell_volume_um3));
  }

  channel::ChannelParams chp;
  chp.D = cfg.channel_D_m2s;
  chp.k_alpha = cfg.channel_k_alpha_s;
  const double r_m = cfg.r_rx_um * 1e-6;

  // receiver input, precomputed on a fine grid
  Series alpha_series;
  const double grid_dt = cfg.sample_dt_min * 0.5;
  for (double t = 0.0; t <= cfg.horizon_min + 1e-9; t += grid_dt) {
    alpha_series.t.push_back(t);
    const double c =
        t > 0.0 ? channel::response_from_emission(sched, r_m, min_to_s(t), chp)
                : 0.0;
    alpha_series.v.push_back(mol_m3_to_nM(c));
  }

  ensure_dir(cfg.out_dir);
  tx_uniform.write_csv_file(cfg.out_dir + "/tx_trajectory.csv");
  {
    Trajectory alpha_traj({"alpha_at_rx"}, alpha_series.t, alpha_series.v);
    alpha_traj.write_csv_file(cfg.out_dir + "/channel_alpha_at_rx.csv");
    write_svg_plot(cfg.out_dir + "/channel_alpha_at_rx.svg",
                   "Pheromone at the receiver",
                   {{"alpha [nM]", alpha_series.t, alpha_series.v}},
                   inputs.galactose, cfg.horizon_min);
  }

  ExperimentResult res = run_rx_like(
      cfg, [alpha_series](double t) { return alpha_series(t); },
      inputs.galactose, inputs.galactose.breakpoints(),
      {{"tx_params_schema", tx_info.schema},
       {"tx_params_hash", tx_info.hash_hex},
       {"r_rx_um", fmt17(cfg.r_rx_um)},
       {"emission_scale", fmt17(cfg.emission_scale)}});
  for (const char* n : {"/tx_trajectory.csv", "/channel_alpha_at_rx.csv",
                        "/channel_alpha_at_rx.svg"})
    res.written_files.push_back(cfg.out_dir + n);
  res.trajectories.emplace("tx", std::move(tx_uniform));
  return res;
}

ExperimentResult run_channel_only(const ExperimentConfig& cfg) {
  ExperimentResult res;
  channel::ChannelParams chp;
  chp.D = cfg.channel_D_m2s;
  chp.k_alpha = cfg.channel_k_alpha_s;
  const double r_m = cfg.r_rx_um * 1e-6;
  const double t_peak = channel::peak_time(r_m, chp);
  const double t_max = std::max(8.0 * t_peak, cfg.mc_horizon_s);

  ensure_dir(cfg.out_dir);
  const std::string path = cfg.out_dir + "/channel_cir.csv";
  std::ofstream f(path, std::ios::binary);
  if (!f) throw data_error("cannot open '" + path + "' for writing");
  f << "time_s,concentration_nM\n";
  const int n = 400;
  for (int i = 1; i <= n; ++i) {
    const double t = t_max * i / n;
    f << fmt17(t) << ','
      << fmt17(mol_m3_to_nM(
             channel::impulse_response(r_m, t, chp, cfg.alpha0_mol)))
      << '\n';
  }
  f << "# peak_time_s= " << fmt17(t_peak) << '\n';
  res.written_files.push_back(path);
  write_common_manifest(cfg,
                        {{"r_rx_um", fmt17(cfg.r_rx_um)},
                         {"alpha0_mol", fmt17(cfg.alpha0_mol)},
                         {"peak_time_s", fmt17(t_peak)}},
                        res.written_files);
  return res;
}

ExperimentResult run_mc_oracle(const ExperimentConfig& cfg) {
  ExperimentResult res;
  channel::ChannelParams chp;
  chp.D = cfg.channel_D_m2s;
  chp.k_alpha = cfg.channel_k_alpha_s;
  chp.k_re = cfg.k_re_Ms * 1e-3;  // 1/(M s) -> 1/((mol/m^3) s)

  channel::McSettings mc;
  mc.n_particles = cfg.mc_particles;
  mc.dt_s = cfg.mc_dt_s;
  mc.horizon_s = cfg.mc_horizon_s;
  mc.sample_times_s = cfg.probe_times_s;
  mc.seed = cfg.seed;
  mc.probe.center_m = {cfg.r_rx_um * 1e-6, 0.0, 0.0};
  mc.probe.radius_m = cfg.probe_radius_um * 1e-6;
  if (cfg.bar1_field_nM > 0.0) {
    const double b = nM_to_mol_m3(cfg.bar1_field_nM);
    mc.bar1_field = [b](const std::array<double, 3>&, double) { return b; };
  }

  channel::McSource src;
  src.alpha0_mol = cfg.alpha0_mol;

  const channel::McSeries series = channel::mc_simulate(chp, src, mc);

  ensure_dir(cfg.out_dir);
  channel::write_mc_csv(series, cfg.out_dir + "/mc_estimate.csv");
  res.written_files.push_back(cfg.out_dir + "/mc_estimate.csv");

  const std::string cmp_path = cfg.out_dir + "/mc_oracle_compare.csv";
  std::ofstream f(cmp_path, std::ios::binary);
  if (!f) throw data_error("cannot open '" + cmp_path + "' for writing");
  f << "time_s,estimate_nM,stderr_nM,analytic_nM,count,sigmas_off,rel_error,"
       "pass\n";
  for (std::size_t i = 0; i < series.t_s.size(); ++i) {
    McProbeCheck c;
    c.t_s = series.t_s[i];
    c.estimate_nM = mol_m3_to_nM(series.estimate_mol_m3[i]);
    c.stderr_nM = mol_m3_to_nM(series.stderr_mol_m3[i]);
    c.count = series.n_in_probe[i];
    // protease-free analytic reference; with k_re > 0 the oracle is the
    // Monte Carlo itself and no closed form is asserted
    c.analytic_nM = mol_m3_to_nM(channel::ball_average_impulse_response(
        cfg.r_rx_um * 1e-6, cfg.probe_radius_um * 1e-6, c.t_s, chp,
        cfg.alpha0_mol));
    const double diff = std::abs(c.estimate_nM - c.analytic_nM);
    c.sigmas_off = c.stderr_nM > 0.0 ? diff / c.stderr_nM : 0.0;
    c.rel_error = c.analytic_nM > 0.0 ? diff / c.analytic_nM : 0.0;
    const bool check_rel = c.count >= 100;
    c.ok = chp.k_re > 0.0 ||
           (c.sigmas_off <= 3.0 && (!check_rel || c.rel_error <= 0.05));
    f << fmt17(c.t_s) << ',' << fmt17(c.estimate_nM) << ','
      << fmt17(c.stderr_nM) << ',' << fmt17(c.analytic_nM) << ',' << c.count
      << ',' << fmt17(c.sigmas_off) << ',' << fmt17(c.rel_error) << ','
      << (c.ok ? "true" : "false") << '\n';
    res.mc_checks.push_back(c);
  }
  res.written_files.push_back(cmp_path);
  write_common_manifest(cfg,
                        {{"mc_particles", std::to_string(cfg.mc_particles)},
                         {"mc_dt_s", fmt17(cfg.mc_dt_s)},
                         {"probe_radius_um", fmt17(cfg.probe_radius_um)}},
                        res.written_files);
  return res;
}

}  // namespace

StimulusProfile three_pulse_protocol(double amplitude_nM, double width_min,
                                     double gap_min, int n) {
  if (!(amplitude_nM > 0.0))
    throw config_error("three_pulse_protocol: amplitude must be > 0");
  return StimulusProfile::pulse_train(amplitude_nM, width_min, gap_min, n);
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  switch (cfg.scenario) {
    case Scenario::rx_only_synthetic: return run_rx_only(cfg);
    case Scenario::e2e_tx_channel_rx: return run_e2e(cfg);
    case Scenario::channel_only: return run_channel_only(cfg);
    case Scenario::mc_oracle: return run_mc_oracle(cfg);
  }
  throw config_error("unhandled scenario");
}

std::vector<ExperimentResult> run_sweep(const ExperimentConfig& base,
                                        const std::string& key,
                                        const std::vector<std::string>& values,
                                        const std::string& out_root,
                                        int n_workers) {
  if (values.empty()) throw config_error("sweep: no values");
  std::vector<ExperimentConfig> configs;
  configs.reserve(values.size());
  for (const auto& v : values) {
    std::string text = base.source_text;
    text += "\n" + key + " = " + v + "\n";
    text += "out_dir = " + out_root + "/" + key + "=" + v + "\n";
    // re-parse so overrides flow through the same validation path
    std::string filtered;
    std::istringstream in(text);
    std::string line;
    std::vector<std::string> lines;
    while (std::getline(in, line)) lines.push_back(line);
    // later assignments win: drop earlier duplicates of key/out_dir
    std::vector<bool> keep(lines.size(), true);
    auto last_of = [&](const std::string& k) {
      std::ptrdiff_t last = -1;
      for (std::size_t i = 0; i < lines.size(); ++i) {
        const auto eq = lines[i].find('=');
        if (eq == std::string::npos) continue;
        std::string kk = lines[i].substr(0, eq);
        kk.erase(std::remove_if(kk.begin(), kk.end(), ::isspace), kk.end());
        if (kk == k) last = static_cast<std::ptrdiff_t>(i);
      }
      for (std::size_t i = 0; i < lines.size(); ++i) {
        const auto eq = lines[i].find('=');
        if (eq == std::string::npos) continue;
        std::string kk = lines[i].substr(0, eq);
        kk.erase(std::remove_if(kk.begin(), kk.end(), ::isspace), kk.end());
        if (kk == k && static_cast<std::ptrdiff_t>(i) != last) keep[i] = false;
      }
    };
    last_of(key);
    last_of("out_dir");
    for (std::size_t i = 0; i < lines.size(); ++i)
      if (keep[i]) filtered += lines[i] + "\n";
    configs.push_back(parse_config_text(filtered, "sweep(" + key + "=" + v + ")"));
  }

  std::vector<ExperimentResult> results(configs.size());
  std::vector<std::string> errors(configs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= configs.size()) break;
      try {
        results[i] = run_experiment(configs[i]);
      } catch (const std::exception& e) {
        errors[i] = e.what();
      }
    }
  };
  int n = n_workers > 0 ? n_workers
                        : static_cast<int>(std::min<std::size_t>(
                              std::max(1u, std::thread::hardware_concurrency()),
                              configs.size()));
  std::vector<std::thread> pool;
  for (int i = 0; i < n; ++i) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  for (std::size_t i = 0; i < errors.size(); ++i)
    if (!errors[i].empty())
      throw numeric_error("sweep " + key + "=" + values[i] + ": " + errors[i]);

  ensure_dir(out_root);
  std::ofstream f(out_root + "/sweep_summary.csv", std::ios::binary);
  f << key << ",mrna_fold_peak,protein_fold_peak,protein_peak_t_min,events\n";
  for (std::size_t i = 0; i < values.size(); ++i)
    f << values[i] << ',' << fmt17(results[i].mrna_fold_peak) << ','
      << fmt17(results[i].protein_fold_peak) << ','
      << fmt17(results[i].protein_fold_peak_t_min) << ','
      << results[i].events.event_count << '\n';
  return results;
}

}  // namespace yeastlink::harness
