#pragma once

#include <array>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "yeastlink/ode/solver.hpp"
#include "yeastlink/paramfile.hpp"
#include "yeastlink/stimulus.hpp"
#include "yeastlink/trajectory.hpp"

namespace yeastlink::rx {

// Receiver state, all nM. Receptor/G-protein cycle, scaffold cascade
// (letter-named assembly intermediates A..L, K), dissociated MAPK, protease
// feedback, transcription-factor network and the Fus1 output pair.
// See docs/model.md for the full reaction table.
namespace sp {
enum : std::size_t {
  alpha,                     // pheromone at the cell surface
  Ste2, Ste2a,               // receptor, activated receptor
  Sst2a,                     // active G-protein regulator
  Gabg, GaGTP, GaGDP, Gbg,   // heterotrimeric G protein and subunits
  Ste5, Ste11, Ste7, Fus3, Ste20,
  A, B, C, D, E, F, G, H, I, L, K,   // scaffold assembly intermediates
  Fus3PP,                    // dissociated, doubly phosphorylated MAPK
  Bar1, Bar1a,               // protease, secreted active protease
  Fus1_mRNA,
  Ste12, Tec1,
  SD1, SD2, SD1D2,           // Ste12-Dig complexes
  S2,                        // Ste12 homodimer
  TS, TSD1,                  // Tec1-Ste12 complexes
  Ste12s, Tec1s,             // tagged-for-clearance pools
  Fus1,
  count
};
}
inline constexpr std::size_t kNumSpecies = sp::count;
using State = std::array<double, kNumSpecies>;
const std::vector<std::string>& species_names();

// Rate constants and pool sizes. Units nM / minutes. Shipped defaults are
// calibration values (docs/model.md documents each reaction).
struct RxParams {
  // receptor and G cycle
  double k1 = 1e-2;    // pheromone cleavage by active protease, 1/(nM min)
  double k2 = 6e-3;    // receptor activation by pheromone, 1/(nM min)
  double k3 = 2.5;     // active receptor recovery, 1/min
  double k4 = 0.04;     // active receptor internalization loss, 1/min
  double k5 = 1e-9;    // free receptor turnover, 1/min
  double k6 = 6e-3;    // G-protein activation by active receptor, 1/(nM min)
  double k7 = 3.0;    // intrinsic GTP hydrolysis, 1/min
  double k8 = 5e-2;    // Sst2-assisted hydrolysis, 1/(nM min)
  double k9 = 0.6;    // G-protein reassociation, 1/(nM min)

  // scaffold assembly and cascade
  double k10 = 3e-3;   // Gbg + C binding, 1/(nM min)
  double k11 = 2.5;    // D dissociation, 1/min
  double k12 = 2e-3;   // Ste5 + Ste11 binding, 1/(nM min)
  double k13 = 1.0;    // A dissociation, 1/min
  double k14 = 5e-4;   // Ste7 + Fus3 binding, 1/(nM min)
  double k15 = 1.0;    // B dissociation, 1/min
  double k16 = 3e-2;   // A + B fusion, 1/(nM min)
  double k17 = 0.1;    // C dissolution, 1/min
  double k18 = 4e-2;   // D + Ste20 binding, 1/(nM min)
  double k19 = 1.0;    // E reversal, 1/min
  double k20 = 9.0;    // E -> F activation step, 1/min
  double k21 = 1.5;   // E dissolution, 1/min
  double k22 = 9.0;    // F -> G, 1/min
  double k23 = 1.5;   // F dissolution, 1/min
  double k24 = 9.0;    // G -> H, 1/min
  double k25 = 1.5;   // G dissolution, 1/min
  double k26 = 9.0;    // H -> I, 1/min
  double k27 = 1.5;   // H dissolution, 1/min
  double k28 = 9.0;    // I -> L, releases Fus3PP, 1/min
  double k29 = 2e-3;   // L + Fus3 rebinding, 1/(nM min)
  double k30 = 0.5;    // K reversal, 1/min
  double k31 = 2.0;    // K -> I rephosphorylation, 1/min
  double k32 = 2.5;    // L dissolution, 1/min
  double k33 = 5.0;    // Fus3PP dephosphorylation, 1/min

  // protease branch
  double k36 = 5e-3;   // protease activation by Ste12, 1/(nM min)
  double k37 = 0.1;    // active protease deactivation, 1/min
  double k38 = 1e-8;   // active protease loss, 1/min

  // regulator branch
  double k46 = 5.0;    // Sst2 activation ceiling, nM/min
  double k47 = 0.05;   // active Sst2 decay, 1/min
  double hill_K = 4.0; // Sst2 activation half-max of Fus3PP, nM

  // transcription-factor network
  double k_s12 = 0.3;      // Ste12 production, nM/min
  double k_fb1 = 2.0;      // Ste12 feedback production gain, nM/min
  double d_s12 = 0.6;      // free Ste12 clearance via F9, 1/min
  double k_tec1 = 0.02;    // Tec1 production, nM/min
  double k_fb2 = 0.5;      // Tec1 feedback gain, nM/min
  double d_tec1 = 0.002;   // Tec1 clearance, 1/min
  double J1 = 2e-3;        // Fus3PP-assisted Tec1 clearance, 1/(nM min)
  double J2 = 0.05;        // Fus3PP-assisted Tec1-complex release, 1/(nM min)
  double k_c = 0.07;       // generic complex-formation rate, 1/(nM min)
  double d_s = 2.5;        // homodimer dissociation, 1/min
  double kr_sd1 = 0.005, kr_sd2 = 0.005, kr_sd1d2 = 0.005;  // spontaneous release
  double kr_ts = 0.01, kr_tsd1 = 0.005;
  double k_alpha_tf = 0.35;  // phospho-accelerated Dig release, 1/(nM min)
  double d_sd1 = 0.15, d_sd2 = 0.1, d_s2 = 0.5, d_ts = 0.1, d_tsd1 = 0.1;
  double Km_sat = 50.0;    // tagged-pool clearance ceiling, nM/min
  double KD_sat = 50.0;    // tagged-pool clearance half-max, nM
  double k_p1 = 0.5;       // F9 phospho-dependent gain, 1/min
  double k_p2 = 30.0;      // F9 half-max of Fus3PP, nM
  double k_p3 = 0.03;      // F9 basal, 1/min
  double KD1 = 30.0, KD2 = 50.0, KD3 = 30.0;  // promoter occupancy scales, nM
  double TDig1 = 150.0, TDig2 = 45.0;          // repressor pools, nM
  double d_mRNA = 0.026;    // Fus1 transcript decay, 1/min
  double k_trans = 0.05;   // Fus1 translation, 1/min
  double k_d = 0.017;       // Fus1 protein decay, 1/min

  // initial pools for basal equilibration
  double Ste2_total = 100.0;
  double Gabg_total = 1000.0;
  double Ste5_total = 150.0, Ste11_total = 150.0, Ste7_total = 300.0,
         Fus3_total = 300.0, Ste20_total = 100.0;
  double Bar1_total = 20.0;
  double Ste12_init = 40.0, Tec1_init = 5.0;

  // strain handling
  double desens_scale = 1.0;          // multiplies k4 (set by presets)
  double bar1_delta_desens = 20.0;    // desens_scale applied by the
                                      // bar1_delta preset

  // Keeps the transcription-factor balance equations in their compounded
  // historical form (see docs/model.md); default uses mass-consistent signs.
  bool literal_tf_signs = false;
};

// Largest explicitly stable step of the calibrated network (the repressor
// exchange and cascade relaxations put eigenvalues near -10/min).
inline constexpr double kMaxStableStepMin = 0.3;

enum class Strain { bar1_plus, bar1_delta };
Strain parse_strain(const std::string& name);
std::string strain_name(Strain s);

// bar1_delta zeroes the protease pool and applies the desensitization
// scaling on receptor recovery; bar1_plus leaves the file values.
void apply_strain(RxParams& p, Strain strain);

// How the channel output enters the pheromone balance.
//   Prescribed: alpha(t) is clamped to the supplied input; the cleavage
//               rate is still reported but alpha is not integrated.
//   Forced:     d[alpha]/dt = s(t) - v1 with s(t) the supplied inflow
//               rate (nM/min).
enum class InputMode { Prescribed, Forced };

// Input signal: nM in Prescribed mode, nM/min in Forced mode.
using InputFn = std::function<double(double)>;

// Every reaction rate and algebraic factor, evaluated at one state.
struct RateSet {
  std::array<double, 60> v{};   // v[1]..v[59], numbered per docs/model.md
  std::array<double, 10> Fx{};  // Fx[1]..Fx[9]
  double P1 = 0, P2 = 0, P3 = 0;
  double uDig1 = 0, uDig2 = 0;
};

// Throws data_error when a repressor pool underflows (uDig > TDig beyond
// tolerance). Occupancies P1..P3 lie in [0, 1].
RateSet rx_rates(const State& s, const RxParams& p);

void rx_derivatives(double t_min, std::span<const double> y, InputMode mode,
                    const InputFn& input, const RxParams& p,
                    std::span<double> dydt);

State initial_state(const RxParams& p);

struct BasalOptions {
  double max_horizon_min = 4.0e5;
  double tol = 1e-8;  // max |dy/dt| / (|y| + atol)
};

// Pre-stimulation steady state, found by integrating with zero pheromone
// until the relative derivative criterion is met. Deterministic for fixed
// params and settings; throws numeric_error when the horizon is exhausted.
State basal_state(const RxParams& p, const ode::SolverSettings& settings,
                  const BasalOptions& opts = {});

// Relative derivative magnitude used by the basal convergence test.
double max_relative_derivative(const State& s, const RxParams& p, double atol);

Trajectory simulate(const RxParams& p, InputMode mode, const InputFn& input,
                    const State& y0, double t0_min, double t1_min,
                    std::vector<double> breakpoints,
                    const ode::SolverSettings& settings,
                    ode::IntegrationStats* stats = nullptr);

// Pointwise value / baseline; throws on non-positive baseline.
std::vector<double> fold_change(const Trajectory& traj, std::string_view species,
                                double baseline);

}  // namespace yeastlink::rx

namespace yeastlink::rx {
std::vector<ParamBinding> param_bindings(RxParams& p);
ParamFileInfo load_params(const std::string& path, RxParams& p);
void write_params(const std::string& path, RxParams& p);
}  // namespace yeastlink::rx
