#include "yeastlink/harness/config.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "yeastlink/errors.hpp"
#include "yeastlink/units.hpp"

namespace yeastlink::harness {

Scenario parse_scenario(const std::string& name) {
  if (name == "rx_only_synthetic") return Scenario::rx_only_synthetic;
  if (name == "e2e_tx_channel_rx") return Scenario::e2e_tx_channel_rx;
  if (name == "channel_only") return Scenario::channel_only;
  if (name == "mc_oracle") return Scenario::mc_oracle;
  throw config_error("scenario: unknown value '" + name + "'");
}

std::string scenario_name(Scenario s) {
  switch (s) {
    case Scenario::rx_only_synthetic: return "rx_only_synthetic";
    case Scenario::e2e_tx_channel_rx: return "e2e_tx_channel_rx";
    case Scenario::channel_only: return "channel_only";
    case Scenario::mc_oracle: return "mc_oracle";
  }
  return "?";
}

StimulusProfile ExperimentConfig::pulse_profile() const {
  const double amp_nM = to_nM(make_concentration(pulse_amplitude_uM, Unit::uM));
  if (amp_nM == 0.0) return StimulusProfile{};
  return StimulusProfile::pulse_train(amp_nM, pulse_width_min, pulse_gap_min,
                                      pulse_count, pulse_start_min);
}

void ExperimentConfig::validate() const {
  if (!(horizon_min > 0.0)) throw config_error("horizon_min: must be > 0");
  if (!(sample_dt_min > 0.0)) throw config_error("sample_dt_min: must be > 0");
  if (pulse_amplitude_uM < 0.0)
    throw config_error("pulse_amplitude_uM: must be >= 0");
  if (pulse_count < 1) throw config_error("pulse_count: must be >= 1");
  if (!(rtol > 0.0 && rtol < 1.0)) throw config_error("rtol: must be in (0,1)");
  if (!(atol > 0.0)) throw config_error("atol: must be > 0");
  const bool needs_geometry =
      scenario == Scenario::e2e_tx_channel_rx ||
      scenario == Scenario::channel_only || scenario == Scenario::mc_oracle;
  if (needs_geometry && !(r_rx_um > 0.0))
    throw config_error("r_rx_um: must be > 0 for channel scenarios");
  if (scenario == Scenario::mc_oracle) {
    if (mc_particles < 1000) throw config_error("mc_particles: must be >= 1000");
    if (!(probe_radius_um > 0.0))
      throw config_error("probe_radius_um: must be > 0");
    if (!(mc_dt_s > 0.0)) throw config_error("mc_dt_s: must be > 0");
    if (probe_times_s.empty()) throw config_error("probe_times_s: empty");
  }
  if (!(channel_D_m2s > 0.0)) throw config_error("channel_D_m2s: must be > 0");
  if (channel_k_alpha_s < 0.0)
    throw config_error("channel_k_alpha_s: must be >= 0");
  if (!(cell_volume_um3 > 0.0))
    throw config_error("cell_volume_um3: must be > 0");
  if (event_prominence <= 0.0 || event_prominence >= 1.0)
    throw config_error("event_prominence: must be in (0,1)");
  if (!(event_min_separation_min > 0.0))
    throw config_error("event_min_separation_min: must be > 0");
}

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

double to_number(const std::string& key, const std::string& value) {
  char* end = nullptr;
  const double v = std::strtod(value.c_str(), &end);
  if (end == value.c_str() || *end != '\0')
    throw config_error(key + ": bad number '" + value + "'");
  return v;
}

std::vector<double> to_number_list(const std::string& key,
                                   const std::string& value) {
  std::vector<double> out;
  std::stringstream ss(value);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(to_number(key, trim(cell)));
  if (out.empty()) throw config_error(key + ": empty list");
  return out;
}

}  // namespace

ExperimentConfig parse_config_text(const std::string& text,
                                   const std::string& origin) {
  ExperimentConfig cfg;
  cfg.source_text = text;

  std::map<std::string, std::string> kv;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash_pos = line.find('#');
    if (hash_pos != std::string::npos) line.erase(hash_pos);
    const std::string stripped = trim(line);
    if (stripped.empty()) continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos)
      throw config_error(origin + ":" + std::to_string(lineno) +
                         ": expected 'key = value'");
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value = trim(stripped.substr(eq + 1));
    if (kv.count(key))
      throw config_error(origin + ": duplicate key '" + key + "'");
    kv[key] = value;
  }

  auto take = [&](const char* key) -> std::string {
    auto it = kv.find(key);
    if (it == kv.end()) return {};
    std::string v = it->second;
    kv.erase(it);
    return v;
  };
  auto take_num = [&](const char* key, double& slot) {
    if (auto v = take(key); !v.empty()) slot = to_number(key, v);
  };
  auto take_long = [&](const char* key, long& slot) {
    if (auto v = take(key); !v.empty())
      slot = static_cast<long>(std::llround(to_number(key, v)));
  };
  auto take_int = [&](const char* key, int& slot) {
    if (auto v = take(key); !v.empty())
      slot = static_cast<int>(std::llround(to_number(key, v)));
  };

  if (auto v = take("scenario"); !v.empty()) cfg.scenario = parse_scenario(v);
  if (auto v = take("strain"); !v.empty()) cfg.strain = rx::parse_strain(v);
  if (auto v = take("input_mode"); !v.empty()) {
    if (v == "prescribed")
      cfg.input_mode = rx::InputMode::Prescribed;
    else if (v == "forced")
      cfg.input_mode = rx::InputMode::Forced;
    else
      throw config_error("input_mode: unknown value '" + v + "'");
  }
  take_num("pulse_amplitude_uM", cfg.pulse_amplitude_uM);
  take_num("pulse_width_min", cfg.pulse_width_min);
  take_num("pulse_gap_min", cfg.pulse_gap_min);
  take_int("pulse_count", cfg.pulse_count);
  take_num("pulse_start_min", cfg.pulse_start_min);
  take_num("horizon_min", cfg.horizon_min);
  take_num("sample_dt_min", cfg.sample_dt_min);
  take_num("r_rx_um", cfg.r_rx_um);
  take_num("channel_D_m2s", cfg.channel_D_m2s);
  take_num("channel_k_alpha_s", cfg.channel_k_alpha_s);
  take_num("alpha0_mol", cfg.alpha0_mol);
  take_num("cell_volume_um3", cfg.cell_volume_um3);
  take_num("emission_scale", cfg.emission_scale);
  take_long("mc_particles", cfg.mc_particles);
  take_num("mc_dt_s", cfg.mc_dt_s);
  take_num("mc_horizon_s", cfg.mc_horizon_s);
  take_num("probe_radius_um", cfg.probe_radius_um);
  if (auto v = take("probe_times_s"); !v.empty())
    cfg.probe_times_s = to_number_list("probe_times_s", v);
  take_num("bar1_field_nM", cfg.bar1_field_nM);
  take_num("k_re_Ms", cfg.k_re_Ms);
  take_num("event_prominence", cfg.event_prominence);
  take_num("event_min_separation_min", cfg.event_min_separation_min);
  if (auto v = take("tx_params"); !v.empty()) cfg.tx_params_path = v;
  if (auto v = take("rx_params"); !v.empty()) cfg.rx_params_path = v;
  if (auto v = take("out_dir"); !v.empty()) cfg.out_dir = v;
  if (auto v = take("seed"); !v.empty())
    cfg.seed = static_cast<std::uint64_t>(std::strtoull(v.c_str(), nullptr, 10));
  take_num("rtol", cfg.rtol);
  take_num("atol", cfg.atol);

  if (!kv.empty())
    throw config_error(origin + ": unknown key '" + kv.begin()->first + "'");
  cfg.validate();
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw config_error("cannot open config '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_config_text(ss.str(), path);
}

}  // namespace yeastlink::harness
