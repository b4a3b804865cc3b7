#include "yeastlink/paramfile.hpp"
#include "yeastlink/tx/model.hpp"

namespace yeastlink::tx {

std::vector<ParamBinding> param_bindings(TxParams& p) {
  return {
      {"r_max", &p.r_max, "1/min, max transport rate per nM carrier"},
      {"K_half", &p.K_half, "nM, transport half-max"},
      {"kappa_GK", &p.kappa_GK, "1/min, galactokinase rate"},
      {"K_IU", &p.K_IU, "nM, non-competitive inhibition"},
      {"K_IC", &p.K_IC, "nM, competitive inhibition"},
      {"K_m", &p.K_m, "nM, phosphorylation Michaelis constant"},
      {"delta_metab", &p.delta_metab, "1/min, phospho-sugar consumption"},
      {"mu_alpha", &p.mu_alpha, "1/min, basal dilution"},
      {"y_b", &p.y_b, "-, transport repression depth"},
      {"y_c", &p.y_c, "nM, transport repression half-max"},
      {"x_c", &p.x_c, "nM, transcription repression half-max"},
      {"n_x", &p.n_x, "-, repression Hill exponent (>= 1)"},
      {"mu_glc", &p.mu_glc, "1/min, extra dilution at glucose saturation"},
      {"K_mu", &p.K_mu, "nM, dilution half-max"},
      {"kappa_tr_3", &p.kappa_tr_3, "nM/min, GAL3 transcription"},
      {"kappa_tr_80", &p.kappa_tr_80, "nM/min, GAL80 transcription"},
      {"kappa_tr_2", &p.kappa_tr_2, "nM/min, GAL2 transcription"},
      {"kappa_tr_1", &p.kappa_tr_1, "nM/min, GAL1 transcription"},
      {"kappa_tl_3", &p.kappa_tl_3, "1/min, GAL3 translation"},
      {"kappa_tl_80", &p.kappa_tl_80, "1/min, GAL80 translation"},
      {"kappa_tl_2", &p.kappa_tl_2, "1/min, GAL2 translation"},
      {"kappa_tl_1", &p.kappa_tl_1, "1/min, GAL1 translation"},
      {"gamma_M_3", &p.gamma_M_3, "1/min, GAL3 transcript decay"},
      {"gamma_M_80", &p.gamma_M_80, "1/min, GAL80 transcript decay"},
      {"gamma_M_2", &p.gamma_M_2, "1/min, GAL2 transcript decay"},
      {"gamma_M_1", &p.gamma_M_1, "1/min, GAL1 transcript decay"},
      {"gamma_G_3", &p.gamma_G_3, "1/min, Gal3p decay"},
      {"gamma_G_80", &p.gamma_G_80, "1/min, Gal80p decay"},
      {"gamma_G_2", &p.gamma_G_2, "1/min, Gal2p decay"},
      {"gamma_G_1", &p.gamma_G_1, "1/min, Gal1p decay"},
      {"kappa_C_3", &p.kappa_C_3, "1/min, Gal3p activation by Gi"},
      {"kappa_C_1", &p.kappa_C_1, "1/min, Gal1p activation by Gi"},
      {"K_S", &p.K_S, "nM, activation half-max"},
      {"K_D_1", &p.K_D_1, "nM, Gal1p dimerization"},
      {"K_D_3", &p.K_D_3, "nM, Gal3p dimerization"},
      {"K_D_80", &p.K_D_80, "nM, Gal80p dimerization"},
      {"K_B_1", &p.K_B_1, "nM, Gal1p dimer site binding"},
      {"K_B_3", &p.K_B_3, "nM, Gal3p dimer site binding"},
      {"K_B_80", &p.K_B_80, "nM, Gal80p dimer site binding"},
      {"n_sites_r1", &p.n_sites_r1, "-, activating sites, GAL3/GAL80 promoter"},
      {"n_sites_r2", &p.n_sites_r2, "-, activating sites, GAL2 promoter"},
      {"n_sites_r3", &p.n_sites_r3, "-, activating sites, pheromone gene"},
      {"n_sites_r4", &p.n_sites_r4, "-, activating sites, GAL1 promoter"},
      {"k_deg", &p.k_deg, "1/min, pheromone transcript decay"},
      {"k_tr_alpha", &p.k_tr_alpha, "1/min, pheromone translation"},
      {"k_degP", &p.k_degP, "1/min, pheromone protein decay"},
      {"k_pep_alpha", &p.k_pep_alpha, "1/min, peptide processing"},
      {"k_degPep", &p.k_degPep, "1/min, peptide decay incl. export"},
      {"k_export", &p.k_export, "1/min, exported fraction rate"},
      {"literal_translation", &p.literal_translation,
       "0/1, self-referential translation form (comparison only)"},
  };
}

ParamFileInfo load_params(const std::string& path, TxParams& p) {
  const auto bindings = param_bindings(p);
  return load_param_file(path, "tx_params/1", bindings);
}

void write_params(const std::string& path, TxParams& p) {
  const auto bindings = param_bindings(p);
  write_param_file(path, "tx_params/1", "Transmitter kinetic constants",
                   bindings);
}

}  // namespace yeastlink::tx
