#ifndef QBOOTS_CONFIG_HPP
#define QBOOTS_CONFIG_HPP

#include <string>
#include <vector>

#include "qboots/blindrot.hpp"
#include "qboots/lwe.hpp"
#include "qboots/mhe.hpp"

namespace qboots::config {

struct ExperimentConfig {
  std::string preset;

  lwe::LweParams lwe{u64(1) << 20, 16, 16, 8};
  mhe::MheParams mhe{u64(1) << 48, 1, 2, double(u64(1) << 37)};
  blindrot::BootstrapParams rot{u64(1) << 20, 16};

  u64 shots = 1000;
  u64 seed = 1;
  u64 m_values = 20;      // sampled plaintexts for frequency experiments
  u64 l_tilde_space = 16; // function range 2^{l~}
  std::string function = "identity";  // identity | msb | square | random
  std::string strategy = "qram";      // qram | computed

  u64 db_size = 8;
  u32 word_bits = 1;
  u64 paillier_N = 15;

  bool truncated_switch = false;
  bool use_socket = false;

  /// How the amplitude-scale separation N* >> N is judged: "ratio" demands
  /// N*/(L' n) >= 16, "absolute" demands N* >= 2^16.
  std::string nstar_rule = "ratio";
};

std::vector<std::string> preset_names();
ExperimentConfig preset_config(const std::string& name);

/// key=value lines, '#' comments; a preset= line applies the named preset
/// before the remaining overrides.
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::string& path);
std::string dump_config(const ExperimentConfig& cfg);

/// True when the configured N* clears the separation rule; sets *margin to
/// the achieved ratio.
bool nstar_separated(const ExperimentConfig& cfg, double* margin = nullptr);

/// Checks every module precondition reachable from this config; throws
/// std::invalid_argument with an actionable message on the first failure.
void validate_config(const ExperimentConfig& cfg);

}  // namespace qboots::config

#endif
