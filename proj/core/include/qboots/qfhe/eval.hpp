#ifndef QBOOTS_QFHE_EVAL_HPP
#define QBOOTS_QFHE_EVAL_HPP

#include "qboots/qfhe/authority.hpp"
#include "qboots/qfhe/masked.hpp"
#include "qboots/qsim/circuit.hpp"

namespace qboots::qfhe {

/// Homomorphic circuit evaluation: Clifford gates run through the key-update
/// table; Toffoli, controlled-SWAP (decomposed into CNOT/Toffoli/CNOT), and
/// rotations route through the authority's refresh interface. Every touched
/// qubit ends with fresh encrypted keys when a non-Clifford gate hits it.
void eval_unitary_homomorphic(MaskedState& ms, const qsim::Circuit& circuit,
                              CrotAuthority& authority, Rng& rng);

/// Builds a masked state over the circuit's layout: logical |basis>, masked
/// with fresh uniform keys on every qubit slot.
MaskedState make_masked_state(const qsim::RegisterLayout& layout, const qsim::BasisIndex& basis,
                              CrotAuthority& authority, Rng& rng);

/// Test oracle: decrypt all keys (via the logged oracle) and unmask a copy.
qsim::QuantumState unmask_for_tests(const MaskedState& ms, CrotAuthority& authority);

}  // namespace qboots::qfhe

#endif
