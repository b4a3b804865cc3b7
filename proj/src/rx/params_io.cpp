#include "yeastlink/paramfile.hpp"
#include "yeastlink/rx/model.hpp"

namespace yeastlink::rx {

std::vector<ParamBinding> param_bindings(RxParams& p) {
  return {
      {"k1", &p.k1, "1/(nM min), pheromone cleavage by active protease"},
      {"k2", &p.k2, "1/(nM min), receptor activation"},
      {"k3", &p.k3, "1/min, active receptor recovery"},
      {"k4", &p.k4, "1/min, active receptor internalization loss"},
      {"k5", &p.k5, "1/min, free receptor turnover"},
      {"k6", &p.k6, "1/(nM min), G-protein activation"},
      {"k7", &p.k7, "1/min, intrinsic GTP hydrolysis"},
      {"k8", &p.k8, "1/(nM min), Sst2-assisted hydrolysis"},
      {"k9", &p.k9, "1/(nM min), G-protein reassociation"},
      {"k10", &p.k10, "1/(nM min), Gbg + C binding"},
      {"k11", &p.k11, "1/min, D dissociation"},
      {"k12", &p.k12, "1/(nM min), Ste5 + Ste11 binding"},
      {"k13", &p.k13, "1/min, A dissociation"},
      {"k14", &p.k14, "1/(nM min), Ste7 + Fus3 binding"},
      {"k15", &p.k15, "1/min, B dissociation"},
      {"k16", &p.k16, "1/(nM min), A + B fusion"},
      {"k17", &p.k17, "1/min, C dissolution"},
      {"k18", &p.k18, "1/(nM min), D + Ste20 binding"},
      {"k19", &p.k19, "1/min, E reversal"},
      {"k20", &p.k20, "1/min, E -> F"},
      {"k21", &p.k21, "1/min, E dissolution"},
      {"k22", &p.k22, "1/min, F -> G"},
      {"k23", &p.k23, "1/min, F dissolution"},
      {"k24", &p.k24, "1/min, G -> H"},
      {"k25", &p.k25, "1/min, G dissolution"},
      {"k26", &p.k26, "1/min, H -> I"},
      {"k27", &p.k27, "1/min, H dissolution"},
      {"k28", &p.k28, "1/min, I -> L, MAPK release"},
      {"k29", &p.k29, "1/(nM min), L + Fus3 rebinding"},
      {"k30", &p.k30, "1/min, K reversal"},
      {"k31", &p.k31, "1/min, K -> I"},
      {"k32", &p.k32, "1/min, L dissolution"},
      {"k33", &p.k33, "1/min, Fus3PP dephosphorylation"},
      {"k36", &p.k36, "1/(nM min), protease activation by Ste12"},
      {"k37", &p.k37, "1/min, active protease deactivation"},
      {"k38", &p.k38, "1/min, active protease loss"},
      {"k46", &p.k46, "nM/min, Sst2 activation ceiling"},
      {"k47", &p.k47, "1/min, active Sst2 decay"},
      {"hill_K", &p.hill_K, "nM, Sst2 activation half-max of Fus3PP"},
      {"k_s12", &p.k_s12, "nM/min, Ste12 production"},
      {"k_fb1", &p.k_fb1, "nM/min, Ste12 feedback gain"},
      {"d_s12", &p.d_s12, "1/min, free Ste12 clearance via F9"},
      {"k_tec1", &p.k_tec1, "nM/min, Tec1 production"},
      {"k_fb2", &p.k_fb2, "nM/min, Tec1 feedback gain"},
      {"d_tec1", &p.d_tec1, "1/min, Tec1 clearance"},
      {"J1", &p.J1, "1/(nM min), phospho-assisted Tec1 clearance"},
      {"J2", &p.J2, "1/(nM min), phospho-assisted Tec1-complex release"},
      {"k_c", &p.k_c, "1/(nM min), complex formation"},
      {"d_s", &p.d_s, "1/min, homodimer dissociation"},
      {"kr_sd1", &p.kr_sd1, "1/min, SD1 spontaneous release"},
      {"kr_sd2", &p.kr_sd2, "1/min, SD2 spontaneous release"},
      {"kr_sd1d2", &p.kr_sd1d2, "1/min, SD1D2 spontaneous release"},
      {"kr_ts", &p.kr_ts, "1/min, TS spontaneous release"},
      {"kr_tsd1", &p.kr_tsd1, "1/min, TSD1 spontaneous release"},
      {"k_alpha_tf", &p.k_alpha_tf, "1/(nM min), phospho-accelerated Dig release"},
      {"d_sd1", &p.d_sd1, "1/min, SD1 clearance via F9"},
      {"d_sd2", &p.d_sd2, "1/min, SD2 clearance"},
      {"d_s2", &p.d_s2, "1/min, homodimer clearance via F9"},
      {"d_ts", &p.d_ts, "1/min, TS clearance via F9"},
      {"d_tsd1", &p.d_tsd1, "1/min, TSD1 clearance via F9"},
      {"Km_sat", &p.Km_sat, "nM/min, tagged-pool clearance ceiling"},
      {"KD_sat", &p.KD_sat, "nM, tagged-pool clearance half-max"},
      {"k_p1", &p.k_p1, "1/min, F9 phospho gain"},
      {"k_p2", &p.k_p2, "nM, F9 half-max of Fus3PP"},
      {"k_p3", &p.k_p3, "1/min, F9 basal"},
      {"KD1", &p.KD1, "nM, feedback promoter occupancy scale"},
      {"KD2", &p.KD2, "nM, filamentous promoter occupancy scale"},
      {"KD3", &p.KD3, "nM, mating promoter occupancy scale"},
      {"TDig1", &p.TDig1, "nM, total Dig1 pool"},
      {"TDig2", &p.TDig2, "nM, total Dig2 pool"},
      {"d_mRNA", &p.d_mRNA, "1/min, Fus1 transcript decay"},
      {"k_trans", &p.k_trans, "1/min, Fus1 translation"},
      {"k_d", &p.k_d, "1/min, Fus1 protein decay"},
      {"Ste2_total", &p.Ste2_total, "nM, receptor pool"},
      {"Gabg_total", &p.Gabg_total, "nM, G-protein pool"},
      {"Ste5_total", &p.Ste5_total, "nM"},
      {"Ste11_total", &p.Ste11_total, "nM"},
      {"Ste7_total", &p.Ste7_total, "nM"},
      {"Fus3_total", &p.Fus3_total, "nM"},
      {"Ste20_total", &p.Ste20_total, "nM"},
      {"Bar1_total", &p.Bar1_total, "nM, protease pool (0 in bar1_delta)"},
      {"Ste12_init", &p.Ste12_init, "nM, seed value before equilibration"},
      {"Tec1_init", &p.Tec1_init, "nM, seed value before equilibration"},
      {"desens_scale", &p.desens_scale, "-, multiplies k4 (presets override)"},
      {"bar1_delta_desens", &p.bar1_delta_desens,
       "-, desens_scale applied by the bar1_delta preset"},
      {"literal_tf_signs", &p.literal_tf_signs,
       "0/1, compounded historical TF balance form (comparison only)"},
  };
}

ParamFileInfo load_params(const std::string& path, RxParams& p) {
  const auto bindings = param_bindings(p);
  return load_param_file(path, "rx_params/1", bindings);
}

void write_params(const std::string& path, RxParams& p) {
  const auto bindings = param_bindings(p);
  write_param_file(path, "rx_params/1", "Receiver kinetic constants",
                   bindings);
}

}  // namespace yeastlink::rx
