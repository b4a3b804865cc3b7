#include "yeastlink/rx/model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "yeastlink/errors.hpp"

namespace yeastlink::rx {

const std::vector<std::string>& species_names() {
  static const std::vector<std::string> names = {
      "alpha", "Ste2", "Ste2a", "Sst2a", "Gabg", "GaGTP", "GaGDP", "Gbg",
      "Ste5", "Ste11", "Ste7", "Fus3", "Ste20", "A", "B", "C", "D", "E",
      "F", "G", "H", "I", "L", "K", "Fus3PP", "Bar1", "Bar1a", "Fus1_mRNA",
      "Ste12", "Tec1", "SD1", "SD2", "SD1D2", "S2", "TS", "TSD1", "Ste12s",
      "Tec1s", "Fus1"};
  return names;
}

Strain parse_strain(const std::string& name) {
  if (name == "bar1_plus") return Strain::bar1_plus;
  if (name == "bar1_delta") return Strain::bar1_delta;
  throw config_error("unknown strain '" + name +
                     "' (expected bar1_plus or bar1_delta)");
}

std::string strain_name(Strain s) {
  return s == Strain::bar1_plus ? "bar1_plus" : "bar1_delta";
}

void apply_strain(RxParams& p, Strain strain) {
  if (strain == Strain::bar1_delta) {
    p.Bar1_total = 0.0;
    p.desens_scale = p.bar1_delta_desens;
  } else {
    p.desens_scale = 1.0;
  }
}

RateSet rx_rates(const State& s, const RxParams& p) {
  RateSet r;
  auto& v = r.v;
  auto& F = r.Fx;

  r.uDig1 = s[sp::SD1] + s[sp::SD1D2] + s[sp::TSD1];
  r.uDig2 = s[sp::SD2] + s[sp::SD1D2];
  const double slack1 = std::max(1e-3 * p.TDig1, 1e-6);
  const double slack2 = std::max(1e-3 * p.TDig2, 1e-6);
  if (r.uDig1 > p.TDig1 + slack1 || r.uDig2 > p.TDig2 + slack2)
    throw data_error("rx_rates: repressor pool underflow (uDig > TDig): uDig1=" +
                     std::to_string(r.uDig1) + " uDig2=" + std::to_string(r.uDig2) +
                     " SD1=" + std::to_string(s[sp::SD1]) +
                     " SD2=" + std::to_string(s[sp::SD2]) +
                     " SD1D2=" + std::to_string(s[sp::SD1D2]) +
                     " TSD1=" + std::to_string(s[sp::TSD1]));
  const double freeDig1 = p.TDig1 - r.uDig1;
  const double freeDig2 = p.TDig2 - r.uDig2;

  const double fpp = s[sp::Fus3PP];

  v[1] = s[sp::alpha] * s[sp::Bar1a] * p.k1;
  v[2] = s[sp::Ste2] * s[sp::alpha] * p.k2;
  v[3] = s[sp::Ste2a] * p.k3;
  v[4] = s[sp::Ste2a] * p.k4 * p.desens_scale;
  v[5] = s[sp::Ste2] * p.k5;
  v[6] = s[sp::Ste2a] * s[sp::Gabg] * p.k6;
  v[7] = s[sp::GaGTP] * p.k7;
  v[8] = s[sp::GaGTP] * s[sp::Sst2a] * p.k8;
  v[9] = s[sp::GaGDP] * s[sp::Gbg] * p.k9;
  v[10] = s[sp::Gbg] * s[sp::C] * p.k10;
  v[11] = s[sp::D] * p.k11;
  v[12] = s[sp::Ste5] * s[sp::Ste11] * p.k12;
  v[13] = s[sp::A] * p.k13;
  v[14] = s[sp::Ste7] * s[sp::Fus3] * p.k14;
  v[15] = s[sp::B] * p.k15;
  v[16] = s[sp::A] * s[sp::B] * p.k16;
  v[17] = s[sp::C] * p.k17;
  v[18] = s[sp::D] * s[sp::Ste20] * p.k18;
  v[19] = s[sp::E] * p.k19;
  v[20] = s[sp::E] * p.k20;
  v[21] = s[sp::E] * p.k21;
  v[22] = s[sp::F] * p.k22;
  v[23] = s[sp::F] * p.k23;
  v[24] = s[sp::G] * p.k24;
  v[25] = s[sp::G] * p.k25;
  v[26] = s[sp::H] * p.k26;
  v[27] = s[sp::H] * p.k27;
  v[28] = s[sp::I] * p.k28;
  v[29] = s[sp::L] * s[sp::Fus3] * p.k29;
  v[30] = s[sp::K] * p.k30;
  v[31] = s[sp::K] * p.k31;
  v[32] = s[sp::L] * p.k32;
  v[33] = fpp * p.k33;

  // protease / regulator branch (docs/model.md numbering)
  v[34] = s[sp::Ste12] * s[sp::Bar1] * p.k36;
  v[35] = s[sp::Bar1a] * p.k37;
  v[36] = s[sp::Bar1a] * p.k38;
  v[37] = fpp * fpp / (p.hill_K * p.hill_K + fpp * fpp) * p.k46;
  v[38] = s[sp::Sst2a] * p.k47;

  r.P3 = s[sp::S2] / (s[sp::S2] + s[sp::Ste12] + s[sp::SD1] + p.KD3);
  r.P1 = s[sp::S2] / (s[sp::S2] + s[sp::Ste12] + s[sp::SD1] + p.KD1);
  r.P2 = s[sp::TS] / (s[sp::TS] + s[sp::TSD1] + p.KD2);

  const double F9 = p.k_p1 * fpp / (fpp + p.k_p2) + p.k_p3;
  const double release = p.k_alpha_tf * fpp;
  F[1] = p.k_c * s[sp::Ste12] * freeDig2 - (release + p.kr_sd2) * s[sp::SD2];
  F[2] = p.k_c * s[sp::Ste12] * s[sp::Ste12] - p.d_s * s[sp::S2];
  F[3] = p.k_c * s[sp::Ste12] * freeDig1 - (release + p.kr_sd1) * s[sp::SD1];
  F[4] = p.k_c * s[sp::SD1] * freeDig2 - (release + p.kr_sd1d2) * s[sp::SD1D2];
  F[5] = p.k_c * s[sp::Ste12] * s[sp::Tec1] -
         (p.J2 * fpp + p.kr_ts) * s[sp::TS];
  F[6] = p.k_c * s[sp::TS] * freeDig1 -
         (release + p.kr_tsd1 + p.J2 * fpp) * s[sp::TSD1];
  F[7] = p.k_c * s[sp::SD2] * freeDig1 - (release + p.kr_sd1d2) * s[sp::SD1D2];
  F[8] = p.Km_sat / (s[sp::Ste12s] + s[sp::Tec1s] + p.KD_sat);
  F[9] = F9;

  v[39] = p.k_s12 + p.k_fb1 * r.P1;
  if (p.literal_tf_signs)
    v[40] = p.d_s12 * F9 * s[sp::Ste12] - F[1] - 2.0 * F[2] - F[3] - F[5];
  else
    v[40] = p.d_s12 * F9 * s[sp::Ste12] + F[1] + 2.0 * F[2] + F[3] + F[5];
  v[41] = p.k_tec1 + p.k_fb2 * r.P2;
  if (p.literal_tf_signs)
    v[42] = (p.d_tec1 + p.J1 * fpp) * s[sp::Tec1] - F[7] -
            (F[5] + p.J2 * fpp) * s[sp::TS];
  else
    v[42] = (p.d_tec1 + p.J1 * fpp) * s[sp::Tec1] + F[5];
  v[43] = F[3] + p.J2 * fpp * s[sp::TSD1];
  v[44] = F[4] + p.d_sd1 * F9 * s[sp::SD1];
  v[45] = F[1];
  v[46] = F[7] + p.d_sd2 * s[sp::SD2];
  v[47] = F[4] + F[7];
  v[48] = F[2];
  v[49] = p.d_s2 * F9 * s[sp::S2];
  v[50] = F[5];
  v[51] = F[6] + p.d_ts * F9 * s[sp::TS];
  v[52] = F[6];
  v[53] = p.d_tsd1 * F9 * s[sp::TSD1];
  v[54] = 2.0 * p.d_s2 * F9 * s[sp::S2] + p.d_sd2 * F9 * s[sp::SD2] +
          p.d_tsd1 * F9 * s[sp::TSD1] + p.d_s12 * F9 * s[sp::Ste12] +
          p.d_ts * F9 * s[sp::TS];
  v[55] = F[8] * s[sp::Ste12s];
  v[56] = (p.d_tec1 + p.J1 * fpp) * s[sp::Tec1] +
          (p.d_ts * F9 + p.J2 * fpp) * s[sp::TS] +
          (p.d_tsd1 * F9 + p.J2 * fpp) * s[sp::TSD1];
  v[57] = F[8] * s[sp::Tec1s];
  v[58] = p.k_trans * s[sp::Fus1_mRNA];
  v[59] = p.k_d * s[sp::Fus1];
  return r;
}

void rx_derivatives(double t_min, std::span<const double> y, InputMode mode,
                    const InputFn& input, const RxParams& p,
                    std::span<double> dydt) {
  State s;
  for (std::size_t i = 0; i < kNumSpecies; ++i) s[i] = std::max(0.0, y[i]);
  if (mode == InputMode::Prescribed)
    s[sp::alpha] = std::max(0.0, input ? input(t_min) : 0.0);

  const RateSet r = rx_rates(s, p);
  const auto& v = r.v;

  if (mode == InputMode::Prescribed)
    dydt[sp::alpha] = 0.0;  // clamped to the input signal
  else
    dydt[sp::alpha] = (input ? input(t_min) : 0.0) - v[1];

  dydt[sp::Ste2] = -v[2] + v[3] - v[5];
  dydt[sp::Ste2a] = v[2] - v[3] - v[4];
  dydt[sp::Sst2a] = v[37] - v[38];
  dydt[sp::Gabg] = -v[6] + v[9];
  dydt[sp::GaGTP] = v[6] - v[7] - v[8];
  dydt[sp::GaGDP] = v[7] + v[8] - v[9];
  dydt[sp::Gbg] = v[6] - v[9] - v[10] + v[11] + v[21] + v[23] + v[25] +
                  v[27] + v[32];
  if (p.literal_tf_signs) dydt[sp::Gbg] += -v[42] + v[43];
  dydt[sp::Ste5] =
      -v[12] + v[13] + v[17] + v[21] + v[23] + v[25] + v[27] + v[32];
  dydt[sp::Ste11] =
      -v[12] + v[13] + v[17] + v[21] + v[23] + v[25] + v[27] + v[32];
  dydt[sp::Ste7] =
      -v[14] + v[15] + v[17] + v[21] + v[23] + v[25] + v[27] + v[32];
  dydt[sp::Fus3] = -v[14] + v[15] + v[17] + v[21] + v[23] + v[25] + v[27] -
                   v[29] + v[30] + v[33];
  dydt[sp::Ste20] = -v[18] + v[19] + v[21] + v[23] + v[25] + v[27] + v[32];
  dydt[sp::A] = v[12] - v[13] - v[16];
  dydt[sp::B] = v[14] - v[15] - v[16];
  dydt[sp::C] = -v[10] + v[11] + v[16] - v[17];
  dydt[sp::D] = v[10] - v[11] - v[18] + v[19];
  dydt[sp::E] = v[18] - v[19] - v[20] - v[21];
  dydt[sp::F] = v[20] - v[22] - v[23];
  dydt[sp::G] = v[22] - v[24] - v[25];
  dydt[sp::H] = v[24] - v[26] - v[27];
  dydt[sp::I] = v[26] - v[28] + v[31];
  dydt[sp::L] = v[28] - v[29] + v[30] - v[32];
  dydt[sp::K] = v[29] - v[30] - v[31];
  dydt[sp::Fus3PP] = v[28] - v[33];
  dydt[sp::Bar1] = -v[34] + v[35];
  dydt[sp::Bar1a] = v[34] - v[35] - v[36];
  dydt[sp::Fus1_mRNA] = r.P3 - p.d_mRNA * s[sp::Fus1_mRNA];
  dydt[sp::Ste12] = v[39] - v[40];
  dydt[sp::Tec1] = v[41] - v[42];
  dydt[sp::SD1] = v[43] - v[44];
  dydt[sp::SD2] = v[45] - v[46];
  dydt[sp::SD1D2] = v[47];
  dydt[sp::S2] = v[48] - v[49];
  dydt[sp::TS] = v[50] - v[51];
  dydt[sp::TSD1] = v[52] - v[53];
  dydt[sp::Ste12s] = v[54] - v[55];
  dydt[sp::Tec1s] = v[56] - v[57];
  dydt[sp::Fus1] = v[58] - v[59];
}

State initial_state(const RxParams& p) {
  State s{};
  s[sp::Ste2] = p.Ste2_total;
  s[sp::Gabg] = p.Gabg_total;
  s[sp::Ste5] = p.Ste5_total;
  s[sp::Ste11] = p.Ste11_total;
  s[sp::Ste7] = p.Ste7_total;
  s[sp::Fus3] = p.Fus3_total;
  s[sp::Ste20] = p.Ste20_total;
  s[sp::Bar1] = p.Bar1_total;
  s[sp::Ste12] = p.Ste12_init;
  s[sp::Tec1] = p.Tec1_init;
  return s;
}

double max_relative_derivative(const State& s, const RxParams& p,
                               double atol) {
  std::array<double, kNumSpecies> d{};
  rx_derivatives(0.0, std::span<const double>(s.data(), s.size()),
                 InputMode::Prescribed, nullptr, p,
                 std::span<double>(d.data(), d.size()));
  double worst = 0.0;
  for (std::size_t i = 0; i < kNumSpecies; ++i) {
    if (i == sp::alpha) continue;
    worst = std::max(worst, std::abs(d[i]) / (std::abs(s[i]) + atol));
  }
  return worst;
}

State basal_state(const RxParams& p, const ode::SolverSettings& settings,
                  const BasalOptions& opts) {
  State y = initial_state(p);
  ode::SolverSettings local = settings;
  local.sample_dt = 0.0;
  local.h_max = std::min(local.h_max, kMaxStableStepMin);
  // The equilibrium must be resolved below the convergence threshold, not
  // just below the production tolerance.
  local.rtol = std::min(local.rtol, 0.1 * opts.tol);
  local.atol = std::min(local.atol, 1e-11);
  double elapsed = 0.0;
  double chunk = 2000.0;
  while (elapsed < opts.max_horizon_min) {
    ode::OdeProblem prob;
    prob.rhs = [&p](double t, std::span<const double> yy, std::span<double> d) {
      rx_derivatives(t, yy, InputMode::Prescribed, nullptr, p, d);
    };
    prob.y0.assign(y.begin(), y.end());
    prob.t0 = 0.0;
    prob.t1 = chunk;
    Trajectory traj = ode::integrate(prob, local, species_names());
    const auto last = traj.row(traj.n_times() - 1);
    std::copy(last.begin(), last.end(), y.begin());
    elapsed += chunk;
    if (max_relative_derivative(y, p, settings.atol) < opts.tol) return y;
    chunk = std::min(chunk * 2.0, opts.max_horizon_min - elapsed + 1.0);
  }
  throw numeric_error(
      "basal_state: no steady state within the configured horizon "
      "(relative derivative " +
      std::to_string(max_relative_derivative(y, p, settings.atol)) + ")");
}

Trajectory simulate(const RxParams& p, InputMode mode, const InputFn& input,
                    const State& y0, double t0_min, double t1_min,
                    std::vector<double> breakpoints,
                    const ode::SolverSettings& settings,
                    ode::IntegrationStats* stats) {
  ode::OdeProblem prob;
  prob.rhs = [&p, mode, &input](double t, std::span<const double> y,
                                std::span<double> d) {
    rx_derivatives(t, y, mode, input, p, d);
  };
  prob.y0.assign(y0.begin(), y0.end());
  prob.t0 = t0_min;
  prob.t1 = t1_min;
  prob.breakpoints = std::move(breakpoints);
  ode::SolverSettings local = settings;
  local.h_max = std::min(local.h_max, kMaxStableStepMin);
  Trajectory traj = ode::integrate(prob, local, species_names(), stats);

  if (mode == InputMode::Prescribed && input) {
    // Report the clamped pheromone signal in the alpha column.
    std::vector<double> vals;
    vals.reserve(traj.n_times() * traj.n_species());
    for (std::size_t i = 0; i < traj.n_times(); ++i) {
      const auto row = traj.row(i);
      for (std::size_t j = 0; j < traj.n_species(); ++j)
        vals.push_back(j == sp::alpha ? std::max(0.0, input(traj.times()[i]))
                                      : row[j]);
    }
    traj = Trajectory(traj.species(), traj.times(), std::move(vals));
  }
  return traj;
}

std::vector<double> fold_change(const Trajectory& traj,
                                std::string_view species, double baseline) {
  if (!(baseline > 0.0))
    throw data_error("fold_change: baseline must be positive");
  std::vector<double> out = traj.column(species);
  for (double& v : out) v /= baseline;
  return out;
}

}  // namespace yeastlink::rx
