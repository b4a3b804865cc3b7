#include "yeastlink/tx/model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "yeastlink/errors.hpp"

namespace yeastlink::tx {

const std::vector<std::string>& species_names() {
  static const std::vector<std::string> names = {
      "M3", "M80", "M2", "M1", "G3", "G80", "G2", "G1",
      "Gi", "MFalpha1", "alpha_p", "alpha_pep"};
  return names;
}

double transport_rate(double G2, double Ge, double Gi, const TxParams& p) {
  if (G2 < 0.0 || Ge < 0.0 || Gi < 0.0)
    throw std::domain_error("transport_rate: negative concentration");
  return p.r_max * G2 *
         (Ge / (p.K_half + Ge) - Gi / (p.K_half + Gi));
}

double phospho_sigma(double Gi, const TxParams& p) {
  if (Gi < 0.0) throw std::domain_error("phospho_sigma: negative Gi");
  return p.kappa_GK * p.K_IU * p.K_IC / (p.K_IU * p.K_m + p.K_IC * Gi);
}

double phospho_kp(double Gi, const TxParams& p) {
  if (Gi < 0.0) throw std::domain_error("phospho_kp: negative Gi");
  return (p.K_m + Gi) * p.K_IU * p.K_IC / (p.K_IU * p.K_m + p.K_IC * Gi);
}

double phospho_flux(double Gi, double G1, const TxParams& p) {
  const double sigma = phospho_sigma(Gi, p);
  const double kp = phospho_kp(Gi, p);
  const double drive = sigma * Gi * G1;
  if (drive <= 0.0) return 0.0;
  const double disc = kp * kp + 4.0 * drive / p.delta_metab;
  return 2.0 * drive / (kp + std::sqrt(disc));
}

double glucose_transport_factor(double R, const TxParams& p) {
  return (1.0 - p.y_b) + p.y_b / (p.y_c + R);
}

double glucose_repression_factor(double R, const TxParams& p) {
  return 1.0 / (std::pow(R / p.x_c, p.n_x) + 1.0);
}

double dilution_rate(double R, const TxParams& p) {
  return p.mu_alpha + p.mu_glc * R / (R + p.K_mu);
}

std::array<double, 3> binding_constants(const TxParams& p) {
  const double consts[] = {p.K_D_1, p.K_D_3, p.K_D_80, p.K_B_1,
                           p.K_B_3, p.K_B_80, p.kappa_C_1, p.kappa_C_3};
  for (double c : consts)
    if (!(c > 0.0)) throw config_error("binding_constants: non-positive constant");
  const double K1 = std::sqrt(p.K_D_1 * p.K_B_3 * p.K_B_1) *
                    (p.gamma_G_1 + p.mu_alpha) / p.kappa_C_1;
  const double K3 = std::sqrt(p.K_D_3 * p.K_B_3 * p.K_B_3) *
                    (p.gamma_G_3 + p.mu_alpha) / p.kappa_C_3;
  const double K80 = std::sqrt(p.K_D_80 * p.K_B_80);
  return {K1, K3, K80};
}

double fractional_transcription(int n_sites, double G80, double G3, double G1,
                                double Gi, const TxParams& p) {
  if (n_sites < 1) throw config_error("fractional_transcription: n_sites < 1");
  if (G80 < 0.0 || G3 < 0.0 || G1 < 0.0 || Gi < 0.0)
    throw std::domain_error("fractional_transcription: negative concentration");
  if (G80 == 0.0) return 1.0;  // repressor-free limit
  const auto [K1, K3, K80] = binding_constants(p);
  const double rep = K80 / G80;
  const double act3 = G3 * Gi / (K3 * (p.K_S + Gi));
  const double act1 = G1 * Gi / (K1 * (p.K_S + Gi));
  double omega = 1.0;
  for (int k = 1; k <= n_sites; ++k) {
    const double e = 2.0 * k;
    omega += std::pow(rep, e) + std::pow(act3, e) + std::pow(act1, e);
  }
  if (std::isinf(omega)) return 1.0;
  return 1.0 - 1.0 / omega;
}

void tx_derivatives(double t_min, std::span<const double> y,
                    const TxInputs& inputs, const TxParams& p,
                    std::span<double> dydt) {
  // Internal stages of the stepper may poke slightly negative values;
  // rates are evaluated on the non-negative part.
  auto at = [&](std::size_t i) { return std::max(0.0, y[i]); };
  const double M3 = at(sp::M3), M80 = at(sp::M80), M2 = at(sp::M2),
               M1 = at(sp::M1);
  const double G3 = at(sp::G3), G80 = at(sp::G80), G2 = at(sp::G2),
               G1 = at(sp::G1);
  const double Gi = at(sp::Gi), MF = at(sp::MFalpha1), ap = at(sp::alpha_p),
               apep = at(sp::alpha_pep);

  const double Ge = inputs.galactose.level_at(t_min);
  const double R = inputs.glucose.level_at(t_min);
  const double x = glucose_repression_factor(R, p);
  const double yR = glucose_transport_factor(R, p);
  const double mu = dilution_rate(R, p);

  const double R1 = fractional_transcription(p.n_sites_r1, G80, G3, G1, Gi, p);
  const double R2 = fractional_transcription(p.n_sites_r2, G80, G3, G1, Gi, p);
  const double R4 = fractional_transcription(p.n_sites_r4, G80, G3, G1, Gi, p);
  // The pheromone gene runs from the GAL1 promoter; its occupancy factor
  // takes no G1 contribution.
  const double R3 = fractional_transcription(p.n_sites_r3, G80, G3, 0.0, Gi, p);

  dydt[sp::M3] = p.kappa_tr_3 * x * R1 - (p.gamma_M_3 + mu) * M3;
  dydt[sp::M80] = p.kappa_tr_80 * x * R1 - (p.gamma_M_80 + mu) * M80;
  dydt[sp::M2] = p.kappa_tr_2 * x * R2 - (p.gamma_M_2 + mu) * M2;
  dydt[sp::M1] = p.kappa_tr_1 * x * R4 - (p.gamma_M_1 + mu) * M1;

  const double act3 = p.kappa_C_3 * Gi / (p.K_S + Gi);
  const double act1 = p.kappa_C_1 * Gi / (p.K_S + Gi);
  const double tl3 = p.literal_translation ? G3 : M3;
  const double tl80 = p.literal_translation ? G80 : M80;
  const double tl2 = p.literal_translation ? G2 : M2;
  const double tl1 = p.literal_translation ? G1 : M1;
  dydt[sp::G3] = p.kappa_tl_3 * tl3 - (p.gamma_G_3 + mu + act3) * G3;
  dydt[sp::G80] = p.kappa_tl_80 * tl80 - (p.gamma_G_80 + mu) * G80;
  dydt[sp::G2] = p.kappa_tl_2 * tl2 - (p.gamma_G_2 + mu) * G2;
  dydt[sp::G1] = p.kappa_tl_1 * tl1 - (p.gamma_G_1 + mu + act1) * G1;

  dydt[sp::Gi] = yR * transport_rate(G2, Ge, Gi, p) - phospho_flux(Gi, G1, p) -
                 Gi * (act3 + act1) - mu * Gi;

  dydt[sp::MFalpha1] = p.kappa_tr_1 * x * R3 - p.k_deg * MF;
  dydt[sp::alpha_p] = p.k_tr_alpha * MF - p.k_degP * ap;
  dydt[sp::alpha_pep] = p.k_pep_alpha * ap - p.k_degPep * apep;
}

Trajectory simulate(const TxParams& p, const TxInputs& inputs,
                    std::span<const double> y0, double t0_min, double t1_min,
                    const ode::SolverSettings& settings,
                    ode::IntegrationStats* stats) {
  ode::OdeProblem prob;
  prob.rhs = [&p, &inputs](double t, std::span<const double> y,
                           std::span<double> d) {
    tx_derivatives(t, y, inputs, p, d);
  };
  prob.y0.assign(y0.begin(), y0.end());
  prob.t0 = t0_min;
  prob.t1 = t1_min;
  prob.breakpoints = inputs.galactose.breakpoints();
  for (double b : inputs.glucose.breakpoints()) prob.breakpoints.push_back(b);
  ode::SolverSettings local = settings;
  local.h_max = std::min(local.h_max, kMaxStableStepMin);
  return ode::integrate(prob, local, species_names(), stats);
}

EmissionSeries secretion_series(const Trajectory& traj, const TxParams& p) {
  if (!traj.has_species("alpha_pep"))
    throw data_error("secretion_series: trajectory lacks alpha_pep");
  EmissionSeries out;
  out.t_min = traj.times();
  out.rate_nM_min = traj.column("alpha_pep");
  for (double& r : out.rate_nM_min) r *= p.k_export;
  return out;
}

}  // namespace yeastlink::tx
