#ifndef QBOOTS_QFHE_PAILLIER_CNOT_HPP
#define QBOOTS_QFHE_PAILLIER_CNOT_HPP

#include <vector>

#include "qboots/paillier.hpp"
#include "qboots/qsim/state.hpp"

namespace qboots::qfhe {

/// 2-qubit layout [a, b] used for encrypted-CNOT inputs and outputs.
qsim::RegisterLayout cnot_pair_layout();

struct EncryptedCnotResult {
  u64 ct_m0r0 = 0;          // measured register G: Enc(m0*; r0*)
  std::vector<int> d;       // Hadamard-measured S bits, layout m || binary(r)
  qsim::QuantumState state; // remaining [a, b] pair
  u64 m0 = 0, r0 = 0;       // the a=0 branch preimage of ct_m0r0
  std::size_t preimage_count = 1;  // per branch; > 1 only for degenerate moduli
};

/// Both branch preimages of a measured G value y: Enc(m0; r0) = y and
/// Enc(m1; r1) xor-gadget composed with Enc(s0) = y. Enumeration oracle.
struct CnotPreimages {
  u64 m0 = 0, r0 = 0;
  u64 m1 = 0, r1 = 0;
  std::size_t count0 = 0, count1 = 0;
  bool unique() const { return count0 == 1 && count1 == 1; }
};
CnotPreimages cnot_preimages(const paillier::PaillierParams& params, u64 c_s0, u64 y);

/// The full pre-measurement superposition after the conditional gadget
/// multiplications (registers a, b, m, r bits, G). Exposed so tests can
/// enumerate the measured-G marginal exactly.
qsim::QuantumState cnot_premeasure_state(u64 c_s0, const qsim::QuantumState& psi,
                                         const paillier::PaillierParams& params);

/// Faithful simulation of the Paillier-based encrypted CNOT: superpose over
/// (m, r), conditionally multiply the xor gadget into G, measure G, Hadamard
/// measure S. The returned pair state equals
/// CNOT^{s0} Z_1^{<d,(m0,r0) xor (m1,r1)>} X_2^{m0} |psi> for bijective moduli.
EncryptedCnotResult paillier_encrypted_cnot(u64 c_s0, const qsim::QuantumState& psi,
                                            const paillier::PaillierKeyPair& keys, u64 seed);

/// Z-key on the control wire: <d, (m0, bits(r0)) xor (m1, bits(r1))> with
/// r encoded MSB first over `bits` positions.
int cnot_z_correction(const CnotPreimages& pre, const std::vector<int>& d, u32 bits);

/// Applies the Pauli corrections (Z on the control, X^{m0} on the target);
/// for bijective moduli the result equals CNOT^{s0} |psi>.
qsim::QuantumState corrected_cnot_output(const EncryptedCnotResult& res, const CnotPreimages& pre,
                                         u32 bits);

}  // namespace qboots::qfhe

#endif
