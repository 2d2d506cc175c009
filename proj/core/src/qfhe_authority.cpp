#include "qboots/qfhe/authority.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace qboots::qfhe {

CrotAuthority::CrotAuthority(const mhe::MheParams& params, u32 chain_len, u64 seed)
    : params_(params) {
  if (chain_len < 1) throw std::invalid_argument("CrotAuthority: chain_len >= 1 required");
  params_.validate();
  Rng rng = derive_rng(seed, 0);
  chain_.reserve(chain_len);
  for (u32 j = 0; j < chain_len; ++j)
    chain_.push_back(mhe::mhe_keygen(params_, rng, static_cast<int>(j)));
}

mhe::MheCiphertext CrotAuthority::encrypt_bit(int bit, Rng& rng) const {
  return mhe::mhe_encrypt(chain_.back().pk, bit, rng);
}

int CrotAuthority::decrypt_internal(const mhe::MheCiphertext& ct) const {
  if (ct.key_id < 0) {
    // Trivial ciphertexts decrypt under any chain key.
    return mhe::mhe_decrypt(chain_.back().sk, ct);
  }
  if (static_cast<std::size_t>(ct.key_id) >= chain_.size())
    throw std::invalid_argument("CrotAuthority: unknown key id");
  return mhe::mhe_decrypt(chain_[static_cast<std::size_t>(ct.key_id)].sk, ct);
}

void CrotAuthority::log(const std::string& op, u32 qubit, u64 payload) {
  u64 h = 1469598103934665603ULL;
  auto mix = [&h](u64 v) {
    h ^= v;
    h *= 1099511628211ULL;
  };
  mix(call_seq_++);
  mix(payload);
  std::ostringstream os;
  os << "CALL " << op << ' ' << qubit << ' ' << std::hex << h;
  log_.push_back(os.str());
}

int CrotAuthority::decrypt_bit(const mhe::MheCiphertext& ct) {
  int bit = decrypt_internal(ct);
  log("decrypt_bit", 0, static_cast<u64>(bit));
  return bit;
}

mhe::MheCiphertext CrotAuthority::encrypted_crot(qsim::QuantumState& state, u32 qubit,
                                                 const std::vector<mhe::MheCiphertext>& alpha_bits,
                                                 Rng& rng) {
  if (alpha_bits.empty()) throw std::invalid_argument("encrypted_crot: no angle digits");
  double alpha = 0.0;
  double w = 0.5;
  for (const auto& ct : alpha_bits) {
    if (!(ct.params == params_)) throw std::invalid_argument("encrypted_crot: params mismatch");
    alpha += w * decrypt_internal(ct);
    w *= 0.5;
  }
  int d = uniform_bit(rng);
  state.r_alpha(qubit, alpha);
  if (d) state.z(qubit);
  crot_units_ += alpha_bits.size();
  log("crot", qubit, static_cast<u64>(d));
  return encrypt_bit(d, rng);
}

void CrotAuthority::unmask(MaskedState& ms, const std::vector<u32>& slots) const {
  for (u32 s : slots) {
    std::size_t q = ms.pos(s);
    int a = decrypt_internal(ms.enc_x[q]);
    int b = decrypt_internal(ms.enc_z[q]);
    ms.state.pauli_otp_decrypt({s}, {a}, {b});
  }
}

void CrotAuthority::remask_fresh(MaskedState& ms, const std::vector<u32>& slots, Rng& rng) {
  for (u32 s : slots) {
    std::size_t q = ms.pos(s);
    int a = uniform_bit(rng);
    int b = uniform_bit(rng);
    ms.state.pauli_otp_encrypt({s}, {a}, {b});
    ms.enc_x[q] = encrypt_bit(a, rng);
    ms.enc_z[q] = encrypt_bit(b, rng);
  }
}

void CrotAuthority::toffoli_refresh(MaskedState& ms, u32 c1, u32 c2, u32 target, Rng& rng) {
  unmask(ms, {c1, c2, target});
  ms.state.toffoli(c1, c2, target);
  remask_fresh(ms, {c1, c2, target}, rng);
  log("toffoli", target, (u64(c1) << 32) | c2);
}

void CrotAuthority::controlled_phase_refresh(MaskedState& ms, u32 control, u32 target,
                                             double alpha, Rng& rng) {
  unmask(ms, {control, target});
  ms.state.cr_alpha(control, target, alpha);
  remask_fresh(ms, {control, target}, rng);
  ++refresh_rotations_;
  log("cphase", target, static_cast<u64>(control));
}

void CrotAuthority::rotation_refresh(MaskedState& ms, u32 target, double alpha, Rng& rng) {
  unmask(ms, {target});
  ms.state.r_alpha(target, alpha);
  remask_fresh(ms, {target}, rng);
  ++refresh_rotations_;
  log("rot", target, 0);
}

void CrotAuthority::qft_refresh(MaskedState& ms, const std::vector<u32>& slots, bool inverse,
                                Rng& rng) {
  unmask(ms, slots);
  ms.state.qft(slots, inverse);
  remask_fresh(ms, slots, rng);
  std::size_t l = slots.size();
  refresh_rotations_ += l * (l - 1) / 2;  // CR gates of the textbook circuit
  log("qft", slots.empty() ? 0 : slots.front(), static_cast<u64>(l));
}

}  // namespace qboots::qfhe
