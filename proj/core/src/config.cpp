#include "qboots/config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace qboots::config {

std::vector<std::string> preset_names() {
  return {"toy-rotation", "compressed-readout", "bootstrap-toy", "fbootstrap-toy",
          "pir-toy", "paillier-cnot-toy"};
}

ExperimentConfig preset_config(const std::string& name) {
  ExperimentConfig c;
  c.preset = name;
  if (name == "toy-rotation") {
    // L' = L: plain refresh at the scale where the success bound is ~1.
    c.lwe = {u64(1) << 20, 16, 16, 8};
    c.rot = {u64(1) << 20, 16};
    c.shots = 1000;
  } else if (name == "compressed-readout") {
    // L' < L, errorless input: nearest-cell frequency vs the 4/pi^2 floor.
    c.lwe = {u64(1) << 20, 64, 16, 0};
    c.rot = {u64(1) << 20, 8};
    c.shots = 10000;
    c.m_values = 20;
  } else if (name == "bootstrap-toy") {
    c.lwe = {u64(1) << 20, 16, 16, 8};
    c.rot = {u64(1) << 20, 16};
    c.shots = 1000;
  } else if (name == "fbootstrap-toy") {
    c.lwe = {u64(1) << 20, 16, 16, 8};
    c.rot = {u64(1) << 20, 16};
    c.l_tilde_space = 16;
    c.shots = 16;  // one per input value
  } else if (name == "pir-toy") {
    c.db_size = 8;
    c.word_bits = 4;
    c.shots = 1;
  } else if (name == "paillier-cnot-toy") {
    c.paillier_N = 15;
    c.shots = 20;
  } else {
    throw std::invalid_argument("unknown preset '" + name + "'");
  }
  return c;
}

namespace {

u64 parse_u64(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    u64 r = std::stoull(v, &pos, 0);
    if (pos != v.size()) throw std::invalid_argument("trailing");
    return r;
  } catch (const std::exception&) {
    throw std::invalid_argument("config: bad integer for " + key + ": '" + v + "'");
  }
}

bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  throw std::invalid_argument("config: bad boolean for " + key + ": '" + v + "'");
}

void apply(ExperimentConfig& c, const std::string& key, const std::string& v) {
  if (key == "preset") {
    c = preset_config(v);
  } else if (key == "lwe.Q") c.lwe.Q = parse_u64(key, v);
  else if (key == "lwe.L") c.lwe.L = parse_u64(key, v);
  else if (key == "lwe.n") c.lwe.n = static_cast<u32>(parse_u64(key, v));
  else if (key == "lwe.B") c.lwe.B = parse_u64(key, v);
  else if (key == "mhe.Qp") c.mhe.Qp = parse_u64(key, v);
  else if (key == "mhe.np") c.mhe.np = static_cast<u32>(parse_u64(key, v));
  else if (key == "mhe.beta_init") c.mhe.beta_init = parse_u64(key, v);
  else if (key == "mhe.beta_acc") c.mhe.beta_acc = std::stod(v);
  else if (key == "rot.N_star") c.rot.N_star = parse_u64(key, v);
  else if (key == "rot.L_prime") c.rot.L_prime = parse_u64(key, v);
  else if (key == "shots") c.shots = parse_u64(key, v);
  else if (key == "seed") c.seed = parse_u64(key, v);
  else if (key == "m_values") c.m_values = parse_u64(key, v);
  else if (key == "L_tilde") c.l_tilde_space = parse_u64(key, v);
  else if (key == "function") c.function = v;
  else if (key == "strategy") c.strategy = v;
  else if (key == "db_size") c.db_size = parse_u64(key, v);
  else if (key == "word_bits") c.word_bits = static_cast<u32>(parse_u64(key, v));
  else if (key == "paillier_N") c.paillier_N = parse_u64(key, v);
  else if (key == "truncated_switch") c.truncated_switch = parse_bool(key, v);
  else if (key == "use_socket") c.use_socket = parse_bool(key, v);
  else if (key == "nstar_rule") c.nstar_rule = v;
  else throw std::invalid_argument("config: unknown key '" + key + "'");
}

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

ExperimentConfig parse_config(const std::string& text) {
  ExperimentConfig c;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config: expected key=value, got '" + line + "'");
    apply(c, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::invalid_argument("config: cannot open " + path);
  std::ostringstream os;
  os << f.rdbuf();
  return parse_config(os.str());
}

std::string dump_config(const ExperimentConfig& c) {
  std::ostringstream os;
  if (!c.preset.empty()) os << "preset = " << c.preset << '\n';
  os << "lwe.Q = " << c.lwe.Q << '\n'
     << "lwe.L = " << c.lwe.L << '\n'
     << "lwe.n = " << c.lwe.n << '\n'
     << "lwe.B = " << c.lwe.B << '\n'
     << "mhe.Qp = " << c.mhe.Qp << '\n'
     << "mhe.np = " << c.mhe.np << '\n'
     << "mhe.beta_init = " << c.mhe.beta_init << '\n'
     << "mhe.beta_acc = " << c.mhe.beta_acc << '\n'
     << "rot.N_star = " << c.rot.N_star << '\n'
     << "rot.L_prime = " << c.rot.L_prime << '\n'
     << "shots = " << c.shots << '\n'
     << "seed = " << c.seed << '\n'
     << "m_values = " << c.m_values << '\n'
     << "L_tilde = " << c.l_tilde_space << '\n'
     << "function = " << c.function << '\n'
     << "strategy = " << c.strategy << '\n'
     << "db_size = " << c.db_size << '\n'
     << "word_bits = " << c.word_bits << '\n'
     << "paillier_N = " << c.paillier_N << '\n'
     << "truncated_switch = " << (c.truncated_switch ? "true" : "false") << '\n'
     << "use_socket = " << (c.use_socket ? "true" : "false") << '\n'
     << "nstar_rule = " << c.nstar_rule << '\n';
  return os.str();
}

bool nstar_separated(const ExperimentConfig& cfg, double* margin) {
  double m;
  bool ok;
  if (cfg.nstar_rule == "absolute") {
    m = double(cfg.rot.N_star) / double(u64(1) << 16);
    ok = cfg.rot.N_star >= (u64(1) << 16);
  } else {
    m = double(cfg.rot.N_star) / (double(cfg.rot.L_prime) * double(cfg.lwe.n));
    ok = m >= 16.0;
  }
  if (margin) *margin = m;
  return ok;
}

void validate_config(const ExperimentConfig& cfg) {
  cfg.lwe.validate();
  cfg.mhe.validate();
  cfg.rot.validate();
  if (cfg.strategy != "qram" && cfg.strategy != "computed")
    throw std::invalid_argument("config: strategy must be qram or computed");
  if (cfg.function != "identity" && cfg.function != "msb" && cfg.function != "square" &&
      cfg.function != "random" && cfg.function != "all")
    throw std::invalid_argument("config: function must be identity, msb, square, random, or all");
  if (cfg.nstar_rule != "ratio" && cfg.nstar_rule != "absolute")
    throw std::invalid_argument("config: nstar_rule must be ratio or absolute");
  if (!is_power_of_two(cfg.l_tilde_space))
    throw std::invalid_argument("config: L_tilde must be a power of two");
  if (cfg.db_size == 0 || !is_power_of_two(cfg.db_size))
    throw std::invalid_argument("config: db_size must be a power of two");
  if (cfg.word_bits < 1 || cfg.word_bits > 63)
    throw std::invalid_argument("config: word_bits outside [1, 63]");
  if (cfg.paillier_N != 15 && cfg.paillier_N != 21 && cfg.paillier_N != 33 && cfg.paillier_N != 35)
    throw std::invalid_argument("config: paillier_N must be one of 15, 21, 33, 35");
  if (cfg.shots == 0) throw std::invalid_argument("config: shots must be positive");
  double budget = cfg.mhe.combine_budget(cfg.rot.L_prime, cfg.rot.l_prime());
  if (cfg.mhe.beta_acc >= budget) {
    std::ostringstream os;
    os << "config: mhe.beta_acc " << cfg.mhe.beta_acc << " exceeds the recombination budget "
       << budget << " = Q'/(8 L' l' (n'+1)); lower beta_acc or raise Q'";
    throw std::invalid_argument(os.str());
  }
}

}  // namespace qboots::config
