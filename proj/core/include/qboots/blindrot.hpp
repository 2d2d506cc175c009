#ifndef QBOOTS_BLINDROT_HPP
#define QBOOTS_BLINDROT_HPP

#include <vector>

#include "qboots/lwe.hpp"
#include "qboots/mhe.hpp"
#include "qboots/qfhe/authority.hpp"
#include "qboots/qfhe/masked.hpp"

namespace qboots::blindrot {

struct BootstrapParams {
  u64 N_star = 0;   // amplitude scaling 2^{n*}
  u64 L_prime = 0;  // output plaintext space 2^{l'}

  u32 n_star() const { return static_cast<u32>(log2_exact(N_star)); }
  u32 l_prime() const { return static_cast<u32>(log2_exact(L_prime)); }
  void validate() const;
};

/// Pre-measurement result: l'-qubit masked phase-estimation register
/// (slot 0 = MSB) plus call accounting.
struct BlindRotationRun {
  qfhe::MaskedState ms;
  u64 crot_units = 0;
  u64 qft_rotations = 0;
  bool prop41_applicable = true;  // L divides L'
};

struct BlindRotationOutput {
  std::vector<int> c;                      // OTP bits of the outcome, MSB first
  std::vector<mhe::MheCiphertext> enc_d1;  // encrypted X-key bits, same order
  u64 crot_units = 0;
  u64 qft_rotations = 0;
  bool prop41_applicable = true;
};

/// Componentwise a'_i = round(N* a_i / Q).
std::vector<u64> rescale_mask(const std::vector<u64>& a, u64 Q, u64 N_star);

/// Runs the rotation pipeline up to (not including) measurement: per-bit
/// encrypted-angle CROTs against the key-bit encryptions enc_s, the plain
/// rotations by b', and the homomorphic inverse QFT.
BlindRotationRun blind_rotate_state(const lwe::LweCiphertext& ct,
                                    const std::vector<mhe::MheCiphertext>& enc_s,
                                    const BootstrapParams& bp, qfhe::CrotAuthority& authority,
                                    Rng& rng);

/// Full run: measures the register; c = round(L' m / L) xor d1 on success.
BlindRotationOutput blind_rotate(const lwe::LweCiphertext& ct,
                                 const std::vector<mhe::MheCiphertext>& enc_s,
                                 const BootstrapParams& bp, qfhe::CrotAuthority& authority,
                                 Rng& rng);

/// Measure an already-prepared run; reusable for repeated sampling.
BlindRotationOutput measure_run(const BlindRotationRun& run, Rng& rng);

/// Closed-form outcome law: p(k) = |sin(pi rt L') / sin(pi rt)|^2 / L'^2,
/// rt = k/L' - phase.
std::vector<double> outcome_distribution(double phase, u64 L_prime);

/// 1 - (L'B/Q + L'n/(2N*))^4 pi^4 / 3, clamped to [0, 1].
double prop41_bound(const lwe::LweParams& params, const BootstrapParams& bp);
/// 4 / pi^2.
double prop42_bound();

struct RefineResult {
  u64 m_estimate = 0;            // maximum-likelihood m in [L]
  std::vector<u64> histogram;    // outcome counts over [L']
  bool enough_shots = true;
};

/// Compressed-readout refinement: repeated measurement of one prepared run,
/// maximum likelihood over the outcome-law family indexed by m in [L].
RefineResult multishot_refine(const lwe::LweCiphertext& ct,
                              const std::vector<mhe::MheCiphertext>& enc_s,
                              const BootstrapParams& bp, qfhe::CrotAuthority& authority,
                              u64 shots, Rng& rng);

}  // namespace qboots::blindrot

#endif
