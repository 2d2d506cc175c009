#ifndef QBOOTS_QFHE_AUTHORITY_HPP
#define QBOOTS_QFHE_AUTHORITY_HPP

#include <string>
#include <vector>

#include "qboots/mhe.hpp"
#include "qboots/qfhe/masked.hpp"
#include "qboots/qsim/state.hpp"

namespace qboots::qfhe {

/// Key-holding service emulating the encrypted conditional rotation and the
/// refresh-style non-Clifford evaluations. The only surface through which
/// decryption keys are ever touched; every call is appended to the audit log
/// as `CALL <op> <qubit> <hash>`.
class CrotAuthority {
 public:
  CrotAuthority(const mhe::MheParams& params, u32 chain_len, u64 seed);

  const mhe::MheParams& params() const { return params_; }
  u32 chain_len() const { return static_cast<u32>(chain_.size()); }
  const mhe::MhePublicKey& public_key(u32 j) const { return chain_.at(j).pk; }
  const mhe::MhePublicKey& final_key() const { return chain_.back().pk; }

  /// Fresh encryption under the final chain key.
  mhe::MheCiphertext encrypt_bit(int bit, Rng& rng) const;

  /// Decryption test oracle; logged, so protocol audits can prove the server
  /// evaluation path never called it.
  int decrypt_bit(const mhe::MheCiphertext& ct);

  /// Emulated conditional rotation: privately decrypts the angle digits
  /// alpha = sum_j 2^{-j} alpha_j, samples d, applies Z^d R_alpha to the
  /// qubit, and returns a fresh encryption of d. Counts one 1-bit unit per
  /// supplied digit.
  mhe::MheCiphertext encrypted_crot(qsim::QuantumState& state, u32 qubit,
                                    const std::vector<mhe::MheCiphertext>& alpha_bits, Rng& rng);

  /// Refresh-style Toffoli: unmask the three qubits, apply the gate, remask
  /// with fresh uniform keys, return fresh key encryptions in place.
  void toffoli_refresh(MaskedState& ms, u32 c1, u32 c2, u32 target, Rng& rng);

  /// Same contract for a controlled phase rotation (non-Clifford).
  void controlled_phase_refresh(MaskedState& ms, u32 control, u32 target, double alpha, Rng& rng);

  /// Single-qubit rotation refresh (covers T = R_{1/8}).
  void rotation_refresh(MaskedState& ms, u32 target, double alpha, Rng& rng);

  /// Exact QFT over the masked qubits with fresh output keys; rotations are
  /// evaluated exactly and only counted (each CR of the circuit adds one
  /// refresh-rotation unit).
  void qft_refresh(MaskedState& ms, const std::vector<u32>& slots, bool inverse, Rng& rng);

  u64 crot_units() const { return crot_units_; }
  u64 refresh_rotations() const { return refresh_rotations_; }
  const std::vector<std::string>& audit_log() const { return log_; }
  std::size_t audit_mark() const { return log_.size(); }

  /// Test-oracle surface only.
  const mhe::MheSecretKey& secret_key_for_tests() const { return chain_.back().sk; }

 private:
  int decrypt_internal(const mhe::MheCiphertext& ct) const;
  void unmask(MaskedState& ms, const std::vector<u32>& slots) const;
  void remask_fresh(MaskedState& ms, const std::vector<u32>& slots, Rng& rng);
  void log(const std::string& op, u32 qubit, u64 payload);

  mhe::MheParams params_;
  std::vector<mhe::MheKeyPair> chain_;
  std::vector<std::string> log_;
  u64 crot_units_ = 0;
  u64 refresh_rotations_ = 0;
  u64 call_seq_ = 0;
};

}  // namespace qboots::qfhe

#endif
