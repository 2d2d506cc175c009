#include "qboots/qfhe/masked.hpp"

#include <algorithm>
#include <stdexcept>

namespace qboots::qfhe {

std::size_t MaskedState::pos(qsim::u32 slot) const {
  auto it = std::find(slots.begin(), slots.end(), slot);
  if (it == slots.end()) throw std::invalid_argument("MaskedState: slot not masked");
  return static_cast<std::size_t>(it - slots.begin());
}

void eval_clifford(MaskedState& ms, qsim::GateId id, const std::vector<qsim::u32>& targets) {
  using qsim::GateId;
  switch (id) {
    case GateId::X:
      ms.state.x(targets.at(0));
      break;
    case GateId::Y:
      ms.state.y(targets.at(0));
      break;
    case GateId::Z:
      ms.state.z(targets.at(0));
      break;
    case GateId::H: {
      ms.state.h(targets.at(0));
      std::size_t q = ms.pos(targets[0]);
      std::swap(ms.enc_x[q], ms.enc_z[q]);
      break;
    }
    case GateId::P: {
      ms.state.p(targets.at(0));
      std::size_t q = ms.pos(targets[0]);
      ms.enc_z[q] = mhe::mhe_xor(ms.enc_x[q], ms.enc_z[q]);
      break;
    }
    case GateId::CNOT: {
      ms.state.cnot(targets.at(0), targets.at(1));
      std::size_t c = ms.pos(targets[0]), t = ms.pos(targets[1]);
      ms.enc_x[t] = mhe::mhe_xor(ms.enc_x[c], ms.enc_x[t]);
      ms.enc_z[c] = mhe::mhe_xor(ms.enc_z[t], ms.enc_z[c]);
      break;
    }
    default:
      throw std::invalid_argument("eval_clifford: gate is not in the Clifford set");
  }
}

}  // namespace qboots::qfhe
