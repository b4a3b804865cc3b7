#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include "yeastlink/ode/solver.hpp"
#include "yeastlink/paramfile.hpp"
#include "yeastlink/stimulus.hpp"
#include "yeastlink/trajectory.hpp"

namespace yeastlink::tx {

// Transmitter state: galactose-network mRNAs and proteins, intracellular
// galactose and the engineered pheromone production chain. All nM.
namespace sp {
enum : std::size_t {
  M3, M80, M2, M1,          // GAL3/GAL80/GAL2/GAL1 transcripts
  G3, G80, G2, G1,          // corresponding proteins
  Gi,                        // intracellular galactose
  MFalpha1,                  // pheromone transcript
  alpha_p,                   // pheromone protein
  alpha_pep,                 // processed, exportable peptide
  count
};
}
inline constexpr std::size_t kNumSpecies = sp::count;
const std::vector<std::string>& species_names();

// Kinetic constants. Units: nM and minutes unless noted. Values ship in
// params/tx_default.params; the defaults there are calibration values, not
// measurements (see docs/model.md).
struct TxParams {
  // galactose import
  double r_max = 800.0;      // max transport rate, 1/min (per nM of carrier)
  double K_half = 1.0e5;     // half-max transport concentration, nM

  // galactokinase phosphorylation (fast branch, reduced to its steady state)
  double kappa_GK = 100.0;   // measured phosphorylation rate, 1/min
  double K_IU = 1.0e4;       // non-competitive inhibition constant, nM
  double K_IC = 1.0e4;       // competitive inhibition constant, nM
  double K_m = 5.0e3;        // phosphorylation Michaelis constant, nM
  double delta_metab = 2.0;  // phospho-galactose consumption rate, 1/min
  double mu_alpha = 0.01;    // basal dilution rate, 1/min

  // glucose modulation
  double y_b = 0.3;          // transport repression depth (y(0) = 1 at y_c = 1)
  double y_c = 1.0;          // transport repression half-max, nM
  double x_c = 1000.0;       // transcription repression half-max, nM
  double n_x = 2.0;          // repression Hill exponent, >= 1
  double mu_glc = 0.0;       // extra dilution at glucose saturation, 1/min
  double K_mu = 1000.0;      // dilution half-max glucose level, nM

  // transcription / translation / turnover per gene
  double kappa_tr_3 = 1.0, kappa_tr_80 = 0.8, kappa_tr_2 = 1.2,
         kappa_tr_1 = 1.5;                                   // nM/min
  double kappa_tl_3 = 1.0, kappa_tl_80 = 3.0, kappa_tl_2 = 1.0,
         kappa_tl_1 = 1.0;                                   // 1/min
  double gamma_M_3 = 0.15, gamma_M_80 = 0.15, gamma_M_2 = 0.15,
         gamma_M_1 = 0.15;                                   // 1/min
  double gamma_G_3 = 0.02, gamma_G_80 = 0.6, gamma_G_2 = 0.02,
         gamma_G_1 = 0.02;                                   // 1/min

  // activation of G3/G1 by intracellular galactose
  double kappa_C_3 = 0.3, kappa_C_1 = 0.3;  // 1/min
  double K_S = 5.0e3;                        // half-max activation, nM

  // promoter occupancy constants
  double K_D_1 = 100.0, K_D_3 = 100.0, K_D_80 = 6.0;  // dimerization, nM
  double K_B_1 = 10.0, K_B_3 = 10.0, K_B_80 = 1.0;    // site binding, nM
  int n_sites_r1 = 1, n_sites_r2 = 1, n_sites_r3 = 1, n_sites_r4 = 1;

  // pheromone production chain
  double k_deg = 0.15;       // pheromone transcript decay, 1/min
  double k_tr_alpha = 2.0;   // pheromone translation, 1/min
  double k_degP = 0.05;      // pheromone protein decay, 1/min
  double k_pep_alpha = 0.5;  // peptide processing, 1/min
  double k_degPep = 0.1;     // peptide decay (incl. export), 1/min
  double k_export = 0.1;     // exported fraction rate, 1/min

  // Keeps the self-referential translation form (protein concentration as
  // the translation substrate) for comparison runs; the default uses the
  // transcript as the substrate.
  bool literal_translation = false;
};

// Explicit-stability step bound of the calibrated network.
inline constexpr double kMaxStableStepMin = 1.0;

struct TxInputs {
  StimulusProfile galactose;  // extracellular, nM
  StimulusProfile glucose;    // nM
};

// -- transport and phosphorylation --------------------------------------

// Net carrier-facilitated import rate, nM/min. Antisymmetric in
// (extracellular, intracellular); throws std::domain_error on negatives.
double transport_rate(double G2, double Ge, double Gi, const TxParams& p);

// Michaelis-Menten parameters of the reduced phosphorylation branch.
double phospho_sigma(double Gi, const TxParams& p);
double phospho_kp(double Gi, const TxParams& p);

// Phosphorylation drain on intracellular galactose with the fast branch at
// its steady state, nM/min.
double phospho_flux(double Gi, double G1, const TxParams& p);

// -- glucose factors ------------------------------------------------------

double glucose_transport_factor(double R, const TxParams& p);   // y(R)
double glucose_repression_factor(double R, const TxParams& p);  // x(R)
double dilution_rate(double R, const TxParams& p);              // mu(R)

// -- promoter occupancy ---------------------------------------------------

// (K1, K3, K80) lumped binding constants; throws config_error on
// non-positive inputs.
std::array<double, 3> binding_constants(const TxParams& p);

// Fraction of time an n-site promoter is transcriptionally active,
// in [0, 1). The repressor-free limit (G80 = 0) returns 1 exactly.
double fractional_transcription(int n_sites, double G80, double G3, double G1,
                                double Gi, const TxParams& p);

// -- dynamics -------------------------------------------------------------

void tx_derivatives(double t_min, std::span<const double> y,
                    const TxInputs& inputs, const TxParams& p,
                    std::span<double> dydt);

Trajectory simulate(const TxParams& p, const TxInputs& inputs,
                    std::span<const double> y0, double t0_min, double t1_min,
                    const ode::SolverSettings& settings,
                    ode::IntegrationStats* stats = nullptr);

// Pheromone release rate k_export * [alpha_pep], nM/min on the trajectory
// grid. Throws data_error when the peptide column is missing.
struct EmissionSeries {
  std::vector<double> t_min;
  std::vector<double> rate_nM_min;
};
EmissionSeries secretion_series(const Trajectory& traj, const TxParams& p);

}  // namespace yeastlink::tx

namespace yeastlink::tx {
std::vector<ParamBinding> param_bindings(TxParams& p);
ParamFileInfo load_params(const std::string& path, TxParams& p);
void write_params(const std::string& path, TxParams& p);
}  // namespace yeastlink::tx
