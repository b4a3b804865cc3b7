#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "yeastlink/channel/channel.hpp"
#include "yeastlink/channel/monte_carlo.hpp"
#include "yeastlink/harness/config.hpp"
#include "yeastlink/harness/events.hpp"
#include "yeastlink/harness/experiment.hpp"
#include "yeastlink/rx/model.hpp"
#include "yeastlink/tx/model.hpp"

namespace py = pybind11;
using namespace yeastlink;

namespace {

py::dict trajectory_to_dict(const Trajectory& t) {
  py::dict d;
  d["time_min"] = t.times();
  for (std::size_t j = 0; j < t.n_species(); ++j) {
    std::vector<double> col(t.n_times());
    for (std::size_t i = 0; i < t.n_times(); ++i) col[i] = t.value(i, j);
    d[py::str(t.species()[j])] = std::move(col);
  }
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "yeastlink: pheromone-link simulator core";

  py::class_<StimulusProfile>(m, "StimulusProfile")
      .def_static("pulse_train", &StimulusProfile::pulse_train,
                  py::arg("amplitude_nM"), py::arg("width_min"),
                  py::arg("gap_min"), py::arg("count"),
                  py::arg("t0_min") = 0.0)
      .def("level_at", &StimulusProfile::level_at, py::arg("t_min"))
      .def("breakpoints", &StimulusProfile::breakpoints);

  // channel
  py::class_<channel::ChannelParams>(m, "ChannelParams")
      .def(py::init<>())
      .def_readwrite("D", &channel::ChannelParams::D)
      .def_readwrite("k_alpha", &channel::ChannelParams::k_alpha)
      .def_readwrite("legacy_exponent", &channel::ChannelParams::legacy_exponent)
      .def_readwrite("k_re", &channel::ChannelParams::k_re);

  m.def("impulse_response", &channel::impulse_response, py::arg("r_m"),
        py::arg("t_s"), py::arg("params"), py::arg("alpha0_mol"),
        "Point-release concentration (mol/m^3) at distance r and lag t.");
  m.def("peak_time", &channel::peak_time, py::arg("r_m"), py::arg("params"),
        "Lag of the concentration maximum at distance r.");
  m.def(
      "mc_estimate",
      [](const channel::ChannelParams& p, double alpha0_mol, double r_m,
         double probe_radius_m, std::vector<double> sample_times_s, double dt_s,
         long n_particles, std::uint64_t seed) {
        channel::McSource src;
        src.alpha0_mol = alpha0_mol;
        channel::McSettings s;
        s.n_particles = n_particles;
        s.dt_s = dt_s;
        s.horizon_s = sample_times_s.empty() ? 1.0 : sample_times_s.back();
        s.sample_times_s = std::move(sample_times_s);
        s.seed = seed;
        s.probe.center_m = {r_m, 0.0, 0.0};
        s.probe.radius_m = probe_radius_m;
        const auto out = channel::mc_simulate(p, src, s);
        py::dict d;
        d["time_s"] = out.t_s;
        d["estimate_mol_m3"] = out.estimate_mol_m3;
        d["stderr_mol_m3"] = out.stderr_mol_m3;
        d["n_alive"] = out.n_alive;
        return d;
      },
      py::arg("params"), py::arg("alpha0_mol"), py::arg("r_m"),
      py::arg("probe_radius_m"), py::arg("sample_times_s"),
      py::arg("dt_s") = 2e-3, py::arg("n_particles") = 100000,
      py::arg("seed") = 1,
      "Brownian-walk concentration estimate at a spherical probe.");

  // receiver
  py::enum_<rx::Strain>(m, "Strain")
      .value("bar1_plus", rx::Strain::bar1_plus)
      .value("bar1_delta", rx::Strain::bar1_delta);

  m.def(
      "simulate_receiver",
      [](const std::string& params_path, rx::Strain strain,
         const StimulusProfile& stimulus, double horizon_min,
         double sample_dt_min, double rtol, double atol) {
        rx::RxParams p;
        rx::load_params(params_path, p);
        rx::apply_strain(p, strain);
        ode::SolverSettings s;
        s.rtol = rtol;
        s.atol = atol;
        const rx::State basal = rx::basal_state(p, s);
        auto input = [stimulus](double t) { return stimulus.level_at(t); };
        Trajectory traj =
            rx::simulate(p, rx::InputMode::Prescribed, input, basal, 0.0,
                         horizon_min, stimulus.breakpoints(), s)
                .resampled(sample_dt_min);
        py::dict d = trajectory_to_dict(traj);
        d["basal_Fus1"] = basal[rx::sp::Fus1];
        d["basal_Fus1_mRNA"] = basal[rx::sp::Fus1_mRNA];
        return d;
      },
      py::arg("params_path"), py::arg("strain"), py::arg("stimulus"),
      py::arg("horizon_min") = 360.0, py::arg("sample_dt_min") = 0.5,
      py::arg("rtol") = 1e-6, py::arg("atol") = 1e-9,
      "Equilibrate and run the pheromone-response network; returns columns "
      "keyed by species name.");

  // transmitter
  m.def(
      "simulate_transmitter",
      [](const std::string& params_path, const StimulusProfile& galactose,
         double horizon_min, double sample_dt_min, double settle_min) {
        tx::TxParams p;
        tx::load_params(params_path, p);
        ode::SolverSettings s;
        std::array<double, tx::kNumSpecies> y0{};
        tx::TxInputs quiet;
        Trajectory pre = tx::simulate(
            p, quiet, std::span<const double>(y0.data(), y0.size()), 0.0,
            settle_min, s);
        const auto last = pre.row(pre.n_times() - 1);
        std::copy(last.begin(), last.end(), y0.begin());
        tx::TxInputs in;
        in.galactose = galactose;
        Trajectory traj =
            tx::simulate(p, in, std::span<const double>(y0.data(), y0.size()),
                         0.0, horizon_min, s)
                .resampled(sample_dt_min);
        return trajectory_to_dict(traj);
      },
      py::arg("params_path"), py::arg("galactose"),
      py::arg("horizon_min") = 360.0, py::arg("sample_dt_min") = 1.0,
      py::arg("settle_min") = 3000.0,
      "Settle the galactose network, then run the configured induction.");

  m.def(
      "detect_events",
      [](const std::vector<double>& t_min, const std::vector<double>& values,
         double prominence_fraction, double min_separation_min) {
        const auto ev = harness::detect_events(t_min, values,
                                               prominence_fraction,
                                               min_separation_min);
        py::dict d;
        d["event_times_min"] = ev.event_times_min;
        d["event_count"] = ev.event_count;
        d["rate_per_hour"] = ev.rate_per_hour;
        return d;
      },
      py::arg("t_min"), py::arg("values"),
      py::arg("prominence_fraction") = 0.2,
      py::arg("min_separation_min") = 30.0,
      "Prominence-based pulse detection on a sampled series.");

  m.def(
      "run_experiment_config",
      [](const std::string& config_path) {
        const auto cfg = harness::load_config(config_path);
        const auto res = harness::run_experiment(cfg);
        py::dict d;
        d["written_files"] = res.written_files;
        d["mrna_fold_peak"] = res.mrna_fold_peak;
        d["mrna_fold_peak_t_min"] = res.mrna_fold_peak_t_min;
        d["protein_fold_peak"] = res.protein_fold_peak;
        d["protein_fold_peak_t_min"] = res.protein_fold_peak_t_min;
        d["event_count"] = res.events.event_count;
        d["event_rate_per_hour"] = res.events.rate_per_hour;
        d["pulse_window_peaks"] = res.pulse_window_peaks;
        return d;
      },
      py::arg("config_path"),
      "Run one configured experiment, writing outputs to its out_dir.");

#ifdef YEASTLINK_VERSION
  m.attr("__version__") = YEASTLINK_VERSION;
#else
  m.attr("__version__") = "dev";
#endif
}
