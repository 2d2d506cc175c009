#include "qboots/qfhe/eval.hpp"

#include <stdexcept>

namespace qboots::qfhe {

void eval_unitary_homomorphic(MaskedState& ms, const qsim::Circuit& circuit,
                              CrotAuthority& authority, Rng& rng) {
  using qsim::GateId;
  for (const auto& g : circuit.gates) {
    const auto& t = g.targets;
    switch (g.id) {
      case GateId::X:
      case GateId::Y:
      case GateId::Z:
      case GateId::H:
      case GateId::P:
      case GateId::CNOT:
        eval_clifford(ms, g.id, t);
        break;
      case GateId::TOFFOLI:
        authority.toffoli_refresh(ms, t[0], t[1], t[2], rng);
        break;
      case GateId::CSWAP:
        // Controlled-SWAP = (I x CNOT_{2,1}) Toffoli (I x CNOT_{2,1})
        eval_clifford(ms, GateId::CNOT, {t[2], t[1]});
        authority.toffoli_refresh(ms, t[0], t[1], t[2], rng);
        eval_clifford(ms, GateId::CNOT, {t[2], t[1]});
        break;
      case GateId::T:
        authority.rotation_refresh(ms, t[0], 0.125, rng);
        break;
      case GateId::R:
        authority.rotation_refresh(ms, t[0], g.param, rng);
        break;
      case GateId::CR:
        authority.controlled_phase_refresh(ms, t[0], t[1], g.param, rng);
        break;
    }
  }
}

MaskedState make_masked_state(const qsim::RegisterLayout& layout, const qsim::BasisIndex& basis,
                              CrotAuthority& authority, Rng& rng) {
  MaskedState ms;
  ms.state = qsim::QuantumState(layout, basis);
  for (u32 s = 0; s < layout.size(); ++s) {
    if (layout.radix(s) != 2) continue;
    int a = uniform_bit(rng);
    int b = uniform_bit(rng);
    ms.state.pauli_otp_encrypt({s}, {a}, {b});
    ms.slots.push_back(s);
    ms.enc_x.push_back(authority.encrypt_bit(a, rng));
    ms.enc_z.push_back(authority.encrypt_bit(b, rng));
  }
  return ms;
}

qsim::QuantumState unmask_for_tests(const MaskedState& ms, CrotAuthority& authority) {
  qsim::QuantumState copy = ms.state;
  for (std::size_t q = 0; q < ms.slots.size(); ++q) {
    int a = authority.decrypt_bit(ms.enc_x[q]);
    int b = authority.decrypt_bit(ms.enc_z[q]);
    copy.pauli_otp_decrypt({ms.slots[q]}, {a}, {b});
  }
  return copy;
}

}  // namespace qboots::qfhe
