#include "qboots/resources.hpp"

namespace qboots::resources {

u64 lwe_cnot_qubits(u64 n, u64 log_q) { return n * log_q + (n + n * log_q + 1) * log_q; }

u64 paillier_cnot_qubits(u64 modulus_bits) { return 3 * modulus_bits; }

PaillierCountNote paillier_cnot_note(u64 modulus_bits) {
  PaillierCountNote note;
  note.count = paillier_cnot_qubits(modulus_bits);
  note.count_at_3072 = paillier_cnot_qubits(3072);
  note.matches_4096 = note.count == paillier_cnot_qubits(4096);
  return note;
}

CrotCostModel crot_cost_model(u64 l_prime, u64 n, u64 n_star, u64 l_tilde, u64 lambda) {
  CrotCostModel m;
  m.item1 = n * n_star;
  m.item2 = (l_prime > 0 ? l_prime - 1 : 0) * n * n_star;
  m.item3 = lambda * lambda;
  m.item4 = l_prime >= 64 ? 0 : 2 * ((u64(1) << l_prime) - 1) * l_tilde;
  return m;
}

}  // namespace qboots::resources
