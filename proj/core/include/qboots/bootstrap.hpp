#ifndef QBOOTS_BOOTSTRAP_HPP
#define QBOOTS_BOOTSTRAP_HPP

#include <functional>
#include <optional>
#include <vector>

#include "qboots/blindrot.hpp"
#include "qboots/lwe.hpp"
#include "qboots/mhe.hpp"
#include "qboots/qfhe/authority.hpp"
#include "qboots/qsim/circuit.hpp"

namespace qboots::bootstrap {

/// f: Z_L -> Z_{L~}; the extension f~: Z_{L'} -> Z_{L~} uses the deterministic
/// nearest-multiple rule f~(y) = f(round(y L / L') mod L), which satisfies
/// f~(L' m / L) = f(m) whenever L | L'.
struct TestFunction {
  u64 L = 0;
  u64 L_tilde = 0;
  std::function<u64(u64)> f;
  /// Reversible circuit realizing |m'>|0> -> |m'>|f~(m')>; required by the
  /// `computed` strategy.
  std::optional<qsim::Circuit> circuit;

  u64 f_tilde(u64 y, u64 L_prime) const;
  std::vector<u64> f_tilde_table(u64 L_prime) const;
  void validate() const;
};

TestFunction table_function(u64 L, u64 L_tilde, std::vector<u64> table);

/// Direct (memory-budget 1) reversible circuit computing the table; usable as
/// TestFunction::circuit for the `computed` strategy.
qsim::Circuit synthesize_function_circuit(const std::vector<u64>& table, u32 word_bits);

/// OTP bits + encrypted key bits -> one LWE ciphertext over (Q', 2^l, n'),
/// via the per-bit identity m_j Q'/2^k = (c_j + d_j) Q'/2^k - c_j d_j Q'/2^{k-1}
/// with k = j + 1 (the k = 1 correction vanishes mod Q').
lwe::LweCiphertext combine_to_lwe(const std::vector<int>& c,
                                  const std::vector<mhe::MheCiphertext>& enc_d);

struct BootstrapKeys {
  std::vector<mhe::MheCiphertext> enc_s;  // per-bit key encryptions
  mhe::KeySwitchKey ksk;
};

BootstrapKeys make_bootstrap_keys(const lwe::LweSecretKey& key, const lwe::LweParams& params,
                                  qfhe::CrotAuthority& authority, Rng& rng);

struct NoiseReport {
  double err_sk = 0.0;       // Err(LWE(sk)), key-switch table freshness
  double err_m = 0.0;        // Err(LWE(m)), combined-ciphertext noise
  double term_sk = 0.0;      // err_sk * n' * log Q'  (or log Q, truncated)
  double term_scale = 0.0;   // err_m * Q / Q'
  double term_round = 0.0;   // sqrt(n' log Q')
  double b_f = 0.0;
  bool first_term_dominant = false;
};

NoiseReport noise_report(const mhe::KeySwitchKey& ksk, double err_m, bool truncated = false);

struct BootstrapResult {
  lwe::LweCiphertext ct;
  u64 crot_units = 0;
  u64 qft_rotations = 0;
  NoiseReport noise;
};

/// Full refresh pipeline with L' = L: blind rotation, recombination, key
/// switch back to the input (Q, L, n).
BootstrapResult run_bootstrap(const lwe::LweCiphertext& ct, const blindrot::BootstrapParams& bp,
                              const BootstrapKeys& keys, qfhe::CrotAuthority& authority, Rng& rng,
                              bool truncated_switch = false);

enum class FbStrategy { qram, computed };

struct FunctionalResult {
  lwe::LweCiphertext ct;  // over (Q', L~, n')
  u64 crot_units = 0;
  u64 qft_rotations = 0;
  u64 toffoli_count = 0;
};

/// Algorithm: blind rotation with L' >= L keeps the l'-qubit register
/// unmeasured, the table unitary is evaluated homomorphically (QRAM routing
/// tree or the provided reversible circuit), the value register is measured,
/// and the OTP bits recombine into LWE(f(m)).
FunctionalResult functional_bootstrap(const lwe::LweCiphertext& ct, const TestFunction& tf,
                                      const blindrot::BootstrapParams& bp,
                                      const std::vector<mhe::MheCiphertext>& enc_s,
                                      qfhe::CrotAuthority& authority, FbStrategy strategy,
                                      Rng& rng);

}  // namespace qboots::bootstrap

#endif
