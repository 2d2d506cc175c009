#include "qboots/bootstrap.hpp"

#include <cmath>
#include <stdexcept>

#include "qboots/qfhe/eval.hpp"

namespace qboots::bootstrap {

void TestFunction::validate() const {
  if (!is_power_of_two(L) || !is_power_of_two(L_tilde))
    throw std::invalid_argument("TestFunction: L and L~ must be powers of two");
  if (!f) throw std::invalid_argument("TestFunction: f not set");
  for (u64 m = 0; m < L; ++m)
    if (f(m) >= L_tilde) throw std::invalid_argument("TestFunction: f value outside [L~]");
}

u64 TestFunction::f_tilde(u64 y, u64 L_prime) const {
  u64 m = mod_q(round_half_up(y * L, L_prime), L);
  return f(m);
}

std::vector<u64> TestFunction::f_tilde_table(u64 L_prime) const {
  std::vector<u64> t(L_prime);
  for (u64 y = 0; y < L_prime; ++y) t[y] = f_tilde(y, L_prime);
  return t;
}

TestFunction table_function(u64 L, u64 L_tilde, std::vector<u64> table) {
  if (table.size() != L) throw std::invalid_argument("table_function: |table| != L");
  TestFunction tf;
  tf.L = L;
  tf.L_tilde = L_tilde;
  tf.f = [table = std::move(table)](u64 m) { return table.at(m); };
  tf.validate();
  return tf;
}

qsim::Circuit synthesize_function_circuit(const std::vector<u64>& table, u32 word_bits) {
  return qsim::build_qram_circuit(table, word_bits, 1);
}

lwe::LweCiphertext combine_to_lwe(const std::vector<int>& c,
                                  const std::vector<mhe::MheCiphertext>& enc_d) {
  if (c.empty() || c.size() != enc_d.size())
    throw std::invalid_argument("combine_to_lwe: bit/key arity mismatch");
  const mhe::MheParams& mp = enc_d[0].params;
  u32 l = static_cast<u32>(c.size());
  if (l > mp.log_qp()) throw std::invalid_argument("combine_to_lwe: level out of range");

  lwe::LweParams out_params{mp.Qp, u64(1) << l, mp.np, mp.beta_init};
  lwe::LweCiphertext acc = lwe::lwe_trivial(0, out_params, mp.np);
  for (u32 j = 0; j < l; ++j) {
    u32 k = j + 1;
    if (c[j]) acc.b = add_mod(acc.b, mp.Qp >> k, mp.Qp);
    lwe::LweCiphertext ext = mhe::mhe_extract_lwe(enc_d[j], k);
    ext.params = out_params;
    acc = lwe::lwe_add(acc, ext);
    if (c[j] && k >= 2) {
      lwe::LweCiphertext corr = mhe::mhe_extract_lwe(enc_d[j], k - 1);
      corr.params = out_params;
      acc = lwe::lwe_sub(acc, corr);
    }
  }
  return acc;
}

BootstrapKeys make_bootstrap_keys(const lwe::LweSecretKey& key, const lwe::LweParams& params,
                                  qfhe::CrotAuthority& authority, Rng& rng) {
  BootstrapKeys keys;
  keys.enc_s.reserve(key.s.size());
  for (auto bit : key.s) keys.enc_s.push_back(authority.encrypt_bit(bit, rng));
  keys.ksk = mhe::make_keyswitch_key(authority.secret_key_for_tests(), authority.params(), key,
                                     params, rng);
  return keys;
}

NoiseReport noise_report(const mhe::KeySwitchKey& ksk, double err_m, bool truncated) {
  NoiseReport r;
  u64 lq = log2_exact(ksk.dest.Q);
  u64 lqp = log2_exact(ksk.src_Qp);
  double terms = double(ksk.src_np) * double(truncated ? lq : lqp);
  r.err_sk = ksk.err_fresh;
  r.err_m = err_m;
  r.term_sk = r.err_sk * terms;
  r.term_scale = err_m * double(ksk.dest.Q) / double(ksk.src_Qp);
  r.term_round = std::sqrt(terms);
  r.b_f = mhe::key_switch_noise_bound(ksk, err_m, truncated);
  r.first_term_dominant = r.term_sk >= r.term_scale && r.term_sk >= r.term_round;
  return r;
}

BootstrapResult run_bootstrap(const lwe::LweCiphertext& ct, const blindrot::BootstrapParams& bp,
                              const BootstrapKeys& keys, qfhe::CrotAuthority& authority, Rng& rng,
                              bool truncated_switch) {
  if (bp.L_prime != ct.params.L)
    throw std::invalid_argument("run_bootstrap: requires L' = L");
  if (!(keys.ksk.dest == ct.params))
    throw std::invalid_argument("run_bootstrap: key-switch destination != input params");

  blindrot::BlindRotationOutput rot = blindrot::blind_rotate(ct, keys.enc_s, bp, authority, rng);
  lwe::LweCiphertext combined = combine_to_lwe(rot.c, rot.enc_d1);

  BootstrapResult res;
  res.crot_units = rot.crot_units;
  res.qft_rotations = rot.qft_rotations;
  res.ct = mhe::key_switch(combined, keys.ksk, truncated_switch);
  res.noise = noise_report(keys.ksk, combined.noise_bound, truncated_switch);
  return res;
}

FunctionalResult functional_bootstrap(const lwe::LweCiphertext& ct, const TestFunction& tf,
                                      const blindrot::BootstrapParams& bp,
                                      const std::vector<mhe::MheCiphertext>& enc_s,
                                      qfhe::CrotAuthority& authority, FbStrategy strategy,
                                      Rng& rng) {
  tf.validate();
  if (bp.L_prime < ct.params.L)
    throw std::invalid_argument("functional_bootstrap: requires L' >= L");
  if (tf.L != ct.params.L)
    throw std::invalid_argument("functional_bootstrap: function domain != plaintext space");

  u32 lp = bp.l_prime();
  u32 lt = static_cast<u32>(log2_exact(tf.L_tilde));
  std::vector<u64> table = tf.f_tilde_table(bp.L_prime);

  qsim::QramLayout ql;
  qsim::Circuit circuit;
  if (strategy == FbStrategy::qram) {
    circuit = qsim::build_qram_circuit(table, lt, static_cast<u32>(bp.L_prime), &ql);
  } else {
    if (!tf.circuit) throw std::invalid_argument("functional_bootstrap: computed strategy needs a circuit");
    circuit = *tf.circuit;
    ql.index_bits = lp;
    ql.word_bits = lt;
    for (u32 j = 0; j < lp; ++j) ql.index_slots.push_back(j);
    for (u32 j = 0; j < lt; ++j) ql.data_slots.push_back(lp + j);
  }
  if (ql.index_slots.size() != lp || ql.data_slots.size() != lt)
    throw std::invalid_argument("functional_bootstrap: circuit layout shape mismatch");

  blindrot::BlindRotationRun run = blindrot::blind_rotate_state(ct, enc_s, bp, authority, rng);

  // Embed the rotated index register into the circuit layout; every other
  // qubit starts logically |0> with a known-zero mask.
  qsim::AmpMap amps;
  for (const auto& [idx, a] : run.ms.state.amps()) {
    qsim::BasisIndex full(circuit.layout.size(), 0);
    for (u32 j = 0; j < lp; ++j) full[ql.index_slots[j]] = idx[run.ms.slots[j]];
    amps[std::move(full)] += a;
  }
  qfhe::MaskedState ms;
  ms.state = qsim::QuantumState(circuit.layout, std::move(amps));
  for (u32 s = 0; s < circuit.layout.size(); ++s) {
    ms.slots.push_back(s);
    ms.enc_x.push_back(authority.encrypt_bit(0, rng));
    ms.enc_z.push_back(authority.encrypt_bit(0, rng));
  }
  for (u32 j = 0; j < lp; ++j) {
    std::size_t q = ms.pos(ql.index_slots[j]);
    ms.enc_x[q] = run.ms.enc_x[j];
    ms.enc_z[q] = run.ms.enc_z[j];
  }

  u64 crot0 = authority.crot_units();
  u64 rot0 = authority.refresh_rotations();
  qfhe::eval_unitary_homomorphic(ms, circuit, authority, rng);

  std::vector<u32> outcome = ms.state.measure(ql.data_slots, rng);
  std::vector<int> c2(outcome.begin(), outcome.end());
  std::vector<mhe::MheCiphertext> enc_d2;
  for (u32 s : ql.data_slots) enc_d2.push_back(ms.enc_x[ms.pos(s)]);

  FunctionalResult res;
  res.ct = combine_to_lwe(c2, enc_d2);
  res.crot_units = run.crot_units + (authority.crot_units() - crot0);
  res.qft_rotations = run.qft_rotations + (authority.refresh_rotations() - rot0);
  res.toffoli_count = circuit.count(qsim::GateId::TOFFOLI) + circuit.count(qsim::GateId::CSWAP);
  return res;
}

}  // namespace qboots::bootstrap
