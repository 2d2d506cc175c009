#ifndef QBOOTS_RESOURCES_HPP
#define QBOOTS_RESOURCES_HPP

#include "qboots/common.hpp"

namespace qboots::resources {

/// Qubit count for the lattice-based encrypted-CNOT state:
/// n log Q + (n + n log Q + 1) log Q.
u64 lwe_cnot_qubits(u64 n, u64 log_q);

/// Qubit count for the Paillier-based encrypted-CNOT state: 3N
/// (N-qubit pair registers plus a 2N-qubit ciphertext register).
u64 paillier_cnot_qubits(u64 modulus_bits);

/// The published 12,288 figure matches modulus_bits = 4096; the 128-bit
/// security working point 3072 gives 9,216 instead.
struct PaillierCountNote {
  u64 count = 0;
  u64 count_at_3072 = 0;
  bool matches_4096 = false;
};
PaillierCountNote paillier_cnot_note(u64 modulus_bits);

/// Itemized 1-bit conditional-rotation tally for one rotation-based refresh:
///   item1: first-significance layer, n angle digits per key bit;
///   item2: remaining l'-1 layers;
///   item3: security-parameter-quadratic budget for the rotation synthesis
///          (counted theoretically, not simulated);
///   item4: routed-table lookup, 2 (L'-1) l~ controlled swaps.
struct CrotCostModel {
  u64 item1 = 0;
  u64 item2 = 0;
  u64 item3 = 0;
  u64 item4 = 0;
  u64 simulable_total() const { return item1 + item2 + item4; }
  u64 total() const { return item1 + item2 + item3 + item4; }
};

CrotCostModel crot_cost_model(u64 l_prime, u64 n, u64 n_star, u64 l_tilde, u64 lambda);

}  // namespace qboots::resources

#endif
