#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "yeastlink/errors.hpp"
#include "yeastlink/harness/compare.hpp"
#include "yeastlink/harness/config.hpp"
#include "yeastlink/harness/experiment.hpp"
#include "yeastlink/harness/outputs.hpp"
#include "yeastlink/rx/model.hpp"
#include "yeastlink/tx/model.hpp"

namespace {

// exit codes: 0 ok, 2 configuration, 3 numerical failure, 4 check failure
constexpr int kOk = 0, kConfigError = 2, kNumericError = 3, kCheckFailed = 4;

struct GlobalOpts {
  std::string out_dir;
  std::uint64_t seed = 0;
  bool seed_set = false;
  double rtol = 0.0, atol = 0.0;
};

yeastlink::harness::ExperimentConfig load_with_overrides(
    const std::string& path, const GlobalOpts& g) {
  auto cfg = yeastlink::harness::load_config(path);
  if (!g.out_dir.empty()) cfg.out_dir = g.out_dir;
  if (g.seed_set) cfg.seed = g.seed;
  if (g.rtol > 0.0) cfg.rtol = g.rtol;
  if (g.atol > 0.0) cfg.atol = g.atol;
  cfg.validate();
  return cfg;
}

int run_simulate(const std::string& config_path, const GlobalOpts& g) {
  const auto cfg = load_with_overrides(config_path, g);
  const auto res = yeastlink::harness::run_experiment(cfg);
  std::printf("scenario %s done; %zu file(s) under %s\n",
              yeastlink::harness::scenario_name(cfg.scenario).c_str(),
              res.written_files.size(), cfg.out_dir.c_str());
  if (cfg.scenario == yeastlink::harness::Scenario::rx_only_synthetic ||
      cfg.scenario == yeastlink::harness::Scenario::e2e_tx_channel_rx) {
    std::printf("  Fus1_mRNA fold peak %.3g at %.2f min\n", res.mrna_fold_peak,
                res.mrna_fold_peak_t_min);
    std::printf("  Fus1 fold peak %.3g at %.2f min\n", res.protein_fold_peak,
                res.protein_fold_peak_t_min);
    std::printf("  events: %d (%.3g per hour)\n", res.events.event_count,
                res.events.rate_per_hour);
  }
  if (cfg.scenario == yeastlink::harness::Scenario::mc_oracle) {
    bool all_ok = true;
    for (const auto& c : res.mc_checks) {
      std::printf("  t=%.3gs est %.4g nM (se %.2g) vs %.4g nM -> %s\n", c.t_s,
                  c.estimate_nM, c.stderr_nM, c.analytic_nM,
                  c.ok ? "ok" : "FAIL");
      all_ok = all_ok && c.ok;
    }
    if (!all_ok) return kCheckFailed;
  }
  return kOk;
}

int run_sweep_cmd(const std::string& config_path, const std::string& key,
                  const std::vector<std::string>& values, int jobs,
                  const GlobalOpts& g) {
  auto base = load_with_overrides(config_path, g);
  const std::string out_root = base.out_dir;
  const auto results =
      yeastlink::harness::run_sweep(base, key, values, out_root, jobs);
  std::printf("sweep over %s: %zu runs -> %s/sweep_summary.csv\n", key.c_str(),
              results.size(), out_root.c_str());
  return kOk;
}

int run_validate(const std::string& config_path, const std::string& ref_path,
                 const std::string& species, double peak_tol,
                 const GlobalOpts& g) {
  const auto cfg = load_with_overrides(config_path, g);
  const auto res = yeastlink::harness::run_experiment(cfg);
  const auto it = res.trajectories.find("rx_fold");
  if (it == res.trajectories.end())
    throw yeastlink::config_error("validate: scenario produces no fold series");
  const auto ref = yeastlink::harness::ReferenceCurve::read_csv_file(ref_path);
  const auto rep = yeastlink::harness::compare_reference(
      it->second.times(), it->second.column(species), ref, peak_tol);
  yeastlink::harness::write_comparison_csv(
      rep, cfg.out_dir + "/comparison_report.csv");
  std::printf("peak-time error %.2f min (|.| <= %.1f: %s), NRMSE %.4f, "
              "amplitude ratio %.3g\n",
              rep.peak_time_error_min, rep.peak_tolerance_min,
              rep.peak_time_ok ? "ok" : "FAIL", rep.nrmse, rep.amplitude_ratio);
  return rep.peak_time_ok ? kOk : kCheckFailed;
}

int run_write_params(const std::string& dir) {
  yeastlink::harness::ensure_dir(dir);
  yeastlink::tx::TxParams txp;
  yeastlink::tx::write_params(dir + "/tx_default.params", txp);
  yeastlink::rx::RxParams rxp;
  yeastlink::rx::write_params(dir + "/rx_default.params", rxp);
  std::printf("wrote %s/tx_default.params and %s/rx_default.params\n",
              dir.c_str(), dir.c_str());
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"yeastlink: pheromone-link simulator (transmitter, diffusive "
               "channel, receiver)"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand

  GlobalOpts g;
  app.add_option("--out-dir", g.out_dir, "override the config output directory");
  auto* seed_opt = app.add_option("--seed", g.seed, "override the master seed");
  app.add_option("--rtol", g.rtol, "override the solver relative tolerance");
  app.add_option("--atol", g.atol, "override the solver absolute tolerance");

  std::string config_path, sweep_key, ref_path, species = "Fus1_fold";
  std::string params_dir = "params";
  std::vector<std::string> sweep_values;
  int jobs = 0;
  double peak_tol = 15.0;

  auto* sim = app.add_subcommand("simulate", "run one configured experiment");
  sim->add_option("config", config_path, "experiment config file")->required();

  auto* sweep = app.add_subcommand("sweep", "run one experiment per value");
  sweep->add_option("config", config_path)->required();
  sweep->add_option("--param", sweep_key, "config key to vary")->required();
  sweep->add_option("--values", sweep_values, "comma separated values")
      ->required()
      ->delimiter(',');
  sweep->add_option("--jobs", jobs, "worker count (default: hardware)");

  auto* val = app.add_subcommand("validate",
                                 "compare a run against a reference curve");
  val->add_option("config", config_path)->required();
  val->add_option("--reference", ref_path, "reference CSV")->required();
  val->add_option("--species", species, "fold-change column to compare");
  val->add_option("--peak-tol", peak_tol, "peak-time tolerance, minutes");

  long mc_particles = 0;
  double mc_dt = 0.0;
  auto* mc = app.add_subcommand("mc-oracle",
                                "particle-tracking check of the channel kernel");
  mc->add_option("config", config_path)->required();
  mc->add_option("--particles", mc_particles, "override mc_particles");
  mc->add_option("--dt", mc_dt, "override mc_dt_s");

  auto* wp = app.add_subcommand("write-params",
                                "write default parameter files");
  wp->add_option("--dir", params_dir, "target directory");

  CLI11_PARSE(app, argc, argv);
  g.seed_set = seed_opt->count() > 0;

  try {
    if (sim->parsed()) return run_simulate(config_path, g);
    if (sweep->parsed())
      return run_sweep_cmd(config_path, sweep_key, sweep_values, jobs, g);
    if (val->parsed())
      return run_validate(config_path, ref_path, species, peak_tol, g);
    if (mc->parsed()) {
      auto cfg = load_with_overrides(config_path, g);
      cfg.scenario = yeastlink::harness::Scenario::mc_oracle;
      if (mc_particles > 0) cfg.mc_particles = mc_particles;
      if (mc_dt > 0.0) cfg.mc_dt_s = mc_dt;
      cfg.validate();
      const auto res = yeastlink::harness::run_experiment(cfg);
      bool all_ok = true;
      for (const auto& c : res.mc_checks) {
        std::printf("t=%.3gs est %.5g nM (se %.2g, n=%ld) analytic %.5g nM  "
                    "%.2f sigma  %.2f%%  %s\n",
                    c.t_s, c.estimate_nM, c.stderr_nM, c.count, c.analytic_nM,
                    c.sigmas_off, 100.0 * c.rel_error, c.ok ? "ok" : "FAIL");
        all_ok = all_ok && c.ok;
      }
      return all_ok ? kOk : kCheckFailed;
    }
    if (wp->parsed()) return run_write_params(params_dir);
  } catch (const yeastlink::config_error& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kConfigError;
  } catch (const yeastlink::data_error& e) {
    std::fprintf(stderr, "data error: %s\n", e.what());
    return kConfigError;
  } catch (const yeastlink::numeric_error& e) {
    std::fprintf(stderr, "numerical failure: %s\n", e.what());
    return kNumericError;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kNumericError;
  }
  return kOk;
}
