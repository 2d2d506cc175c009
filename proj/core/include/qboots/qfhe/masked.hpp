#ifndef QBOOTS_QFHE_MASKED_HPP
#define QBOOTS_QFHE_MASKED_HPP

#include <vector>

#include "qboots/mhe.hpp"
#include "qboots/qsim/circuit.hpp"
#include "qboots/qsim/state.hpp"

namespace qboots::qfhe {

/// Physical state carrying X^a Z^b Pauli masks whose key bits exist only in
/// encrypted form. slots lists the masked qubits; enc_x / enc_z run parallel.
struct MaskedState {
  qsim::QuantumState state;
  std::vector<qsim::u32> slots;
  std::vector<mhe::MheCiphertext> enc_x;
  std::vector<mhe::MheCiphertext> enc_z;

  std::size_t pos(qsim::u32 slot) const;
};

/// Clifford gates evaluate directly on the masked state; the encrypted keys
/// update homomorphically per the conjugation table.
void eval_clifford(MaskedState& ms, qsim::GateId id, const std::vector<qsim::u32>& targets);

}  // namespace qboots::qfhe

#endif
