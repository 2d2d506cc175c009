#ifndef QBOOTS_PIR_PAILLIER_QPIR_HPP
#define QBOOTS_PIR_PAILLIER_QPIR_HPP

#include "qboots/paillier.hpp"
#include "qboots/pir/database.hpp"
#include "qboots/pir/transcript.hpp"
#include "qboots/pir/transport.hpp"
#include "qboots/qfhe/authority.hpp"

namespace qboots::pir {

/// NAND-count model for homomorphically evaluating the Paillier decryption
/// exponentiation (square-and-multiply over 2b-bit operands, schoolbook
/// multiply + reduction): 320 * b^3 for a b-bit modulus.
u64 paillier_decrypt_nand_cost(u32 modulus_bits);

struct PaillierQpirResult {
  u64 word = 0;
  Transcript transcript;
  u64 conversion_rounds = 0;  // one request/reply pair per Toffoli
  u64 circuit_toffolis = 0;   // TOFFOLI + controlled-SWAP count of the circuit
  u64 nand_cost_per_conversion = 0;
  u64 demo_cnots_verified = 0;  // embedded encrypted-CNOT runs with unique preimages
};

/// Multi-round protocol: the client reveals the OTP-masked index and sends
/// lattice encryptions of the mask; per Toffoli the server requests a
/// lattice-to-Paillier key-bit conversion, runs the encrypted-CNOT gadget on a
/// probe pair, and completes the gate through the authority. The reply flags
/// the Paillier-to-lattice converter as oracle-assisted and carries the
/// NAND-count a genuine homomorphic decryption would need.
PaillierQpirResult paillier_qpir_run(const Database& db, u64 index,
                                     qfhe::CrotAuthority& authority,
                                     const paillier::PaillierKeyPair& pkeys, Rng& rng,
                                     TransportPair* transport = nullptr);

}  // namespace qboots::pir

#endif
