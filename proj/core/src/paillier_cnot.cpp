#include "qboots/qfhe/paillier_cnot.hpp"

#include <cmath>
#include <stdexcept>

namespace qboots::qfhe {

using paillier::gcd_u64;
using paillier::PaillierParams;
using paillier::PaillierPublicKey;

qsim::RegisterLayout cnot_pair_layout() {
  return qsim::RegisterLayout{{{"a", 2}, {"b", 2}}};
}

CnotPreimages cnot_preimages(const PaillierParams& params, u64 c_s0, u64 y) {
  PaillierPublicKey pk{params};
  auto gadget = paillier::make_xor_gadget(pk, c_s0);
  CnotPreimages out;
  for (auto [m, r] : paillier::paillier_bit_preimages(params, y)) {
    out.m0 = m;
    out.r0 = r;
    ++out.count0;
  }
  for (u64 m = 0; m < 2; ++m)
    for (u64 r = 1; r < params.N; ++r) {
      if (gcd_u64(r, params.N) != 1) continue;
      u64 c = paillier::paillier_encrypt(pk, m, r);
      if (paillier::phe_xor_with_plain_bit(pk, gadget, c, m) == y) {
        out.m1 = m;
        out.r1 = r;
        ++out.count1;
      }
    }
  return out;
}

static qsim::RegisterLayout cnot_full_layout(const PaillierParams& params) {
  qsim::RegisterLayout layout;
  layout.slots.push_back({"a", 2});
  layout.slots.push_back({"b", 2});
  layout.slots.push_back({"m", 2});
  for (u32 j = 0; j < params.bits; ++j)
    layout.slots.push_back({"r" + std::to_string(j), 2});  // r0 = MSB
  layout.slots.push_back({"G", static_cast<u32>(params.N2)});
  return layout;
}

qsim::QuantumState cnot_premeasure_state(u64 c_s0, const qsim::QuantumState& psi,
                                         const PaillierParams& params) {
  if (psi.layout().size() != 2 || psi.layout().radix(0) != 2 || psi.layout().radix(1) != 2)
    throw std::invalid_argument("cnot_premeasure_state: psi must be a 2-qubit state");
  if (gcd_u64(c_s0 % params.N2, params.N2) != 1)
    throw std::invalid_argument("cnot_premeasure_state: c_s0 not a unit");
  PaillierPublicKey pk{params};

  std::vector<u64> units;
  for (u64 r = 1; r < params.N; ++r)
    if (gcd_u64(r, params.N) == 1) units.push_back(r);

  qsim::RegisterLayout layout = cnot_full_layout(params);
  u32 g_slot = layout.size() - 1;
  double scale = 1.0 / std::sqrt(2.0 * double(units.size()));

  // Superposition (m, r) with G = Enc(m; r), then the conditional steps:
  // b ^= m and the gadget multiplications into G when a = 1.
  qsim::AmpMap amps;
  for (const auto& [idx, amp] : psi.amps()) {
    for (u32 m = 0; m < 2; ++m)
      for (u64 r : units) {
        qsim::BasisIndex full(layout.size(), 0);
        full[0] = idx[0];
        full[1] = idx[1];
        full[2] = m;
        for (u32 j = 0; j < params.bits; ++j)
          full[3 + j] = static_cast<u32>((r >> (params.bits - 1 - j)) & 1);
        full[g_slot] = static_cast<u32>(paillier::paillier_encrypt(pk, m, r));
        amps[std::move(full)] = amp * scale;
      }
  }
  qsim::QuantumState state(layout, std::move(amps));

  state.cnot(2, 1);  // |b + m>
  auto gadget = paillier::make_xor_gadget(pk, c_s0);
  auto mul_by = [&params](u64 c) {
    return [c, &params](u32 v) { return static_cast<u32>((u128(v) * c) % params.N2); };
  };
  state.apply_basis_map(g_slot, mul_by(gadget.c_s0), {{0, 1}});
  state.apply_basis_map(g_slot, mul_by(gadget.c_neg2s0), {{0, 1}, {2, 1}});
  return state;
}

EncryptedCnotResult paillier_encrypted_cnot(u64 c_s0, const qsim::QuantumState& psi,
                                            const paillier::PaillierKeyPair& keys, u64 seed) {
  const PaillierParams& params = keys.pk.params;
  qsim::QuantumState state = cnot_premeasure_state(c_s0, psi, params);
  u32 g_slot = state.layout().size() - 1;
  Rng rng = derive_rng(seed, 0);

  EncryptedCnotResult res;
  res.ct_m0r0 = state.measure({g_slot}, rng)[0];

  std::vector<u32> s_slots;
  for (u32 j = 0; j < 1 + params.bits; ++j) s_slots.push_back(2 + j);
  for (u32 s : s_slots) state.h(s);
  for (u32 v : state.measure(s_slots, rng)) res.d.push_back(static_cast<int>(v));

  auto pre = paillier::paillier_bit_preimages(params, res.ct_m0r0);
  if (pre.empty()) throw std::logic_error("paillier_encrypted_cnot: measured G has no preimage");
  res.m0 = pre.front().first;
  res.r0 = pre.front().second;
  res.preimage_count = pre.size();

  qsim::AmpMap pair;
  for (const auto& [idx, amp] : state.amps()) pair[{idx[0], idx[1]}] += amp;
  res.state = qsim::QuantumState(cnot_pair_layout(), std::move(pair));
  return res;
}

int cnot_z_correction(const CnotPreimages& pre, const std::vector<int>& d, u32 bits) {
  if (d.size() != std::size_t(bits) + 1)
    throw std::invalid_argument("cnot_z_correction: wrong d length");
  int parity = d[0] & static_cast<int>((pre.m0 ^ pre.m1) & 1);
  for (u32 j = 0; j < bits; ++j) {
    u64 b0 = (pre.r0 >> (bits - 1 - j)) & 1;
    u64 b1 = (pre.r1 >> (bits - 1 - j)) & 1;
    parity ^= d[1 + j] & static_cast<int>(b0 ^ b1);
  }
  return parity;
}

qsim::QuantumState corrected_cnot_output(const EncryptedCnotResult& res, const CnotPreimages& pre,
                                         u32 bits) {
  qsim::QuantumState out = res.state;
  if (cnot_z_correction(pre, res.d, bits)) out.z(0);
  if (pre.m0 & 1) out.x(1);
  return out;
}

}  // namespace qboots::qfhe
