#include "qboots/blindrot.hpp"

#include <cmath>
#include <stdexcept>

namespace qboots::blindrot {

void BootstrapParams::validate() const {
  if (!is_power_of_two(N_star) || !is_power_of_two(L_prime))
    throw std::invalid_argument("BootstrapParams: N* and L' must be powers of two");
  if (L_prime < 2) throw std::invalid_argument("BootstrapParams: L' >= 2 required");
  if (N_star < L_prime) throw std::invalid_argument("BootstrapParams: N* >= L' required");
}

std::vector<u64> rescale_mask(const std::vector<u64>& a, u64 Q, u64 N_star) {
  if (!is_power_of_two(Q) || !is_power_of_two(N_star))
    throw std::invalid_argument("rescale_mask: moduli must be powers of two");
  std::vector<u64> out;
  out.reserve(a.size());
  for (u64 ai : a) {
    u128 num = u128(mod_q(ai, Q)) * N_star;
    out.push_back(mod_q(static_cast<u64>((2 * num + Q) / (2 * u128(Q))), N_star));
  }
  return out;
}

BlindRotationRun blind_rotate_state(const lwe::LweCiphertext& ct,
                                    const std::vector<mhe::MheCiphertext>& enc_s,
                                    const BootstrapParams& bp, qfhe::CrotAuthority& authority,
                                    Rng& rng) {
  bp.validate();
  ct.params.validate();
  if (enc_s.size() != ct.a.size())
    throw std::invalid_argument("blind_rotate: key encryption count != dimension");

  const u32 lp = bp.l_prime();
  const u32 ns = bp.n_star();
  const u64 Nst = bp.N_star;
  u64 crot0 = authority.crot_units();
  u64 qft0 = authority.refresh_rotations();

  std::vector<u64> ap = rescale_mask(ct.a, ct.params.Q, Nst);
  u64 bp_scaled;
  {
    u128 num = u128(ct.b) * Nst;
    bp_scaled = mod_q(static_cast<u64>((2 * num + ct.params.Q) / (2 * u128(ct.params.Q))), Nst);
  }

  qsim::RegisterLayout layout;
  for (u32 j = 0; j < lp; ++j) layout.slots.push_back({"y" + std::to_string(j), 2});

  BlindRotationRun run;
  run.prop41_applicable = (bp.L_prime % ct.params.L == 0);
  run.ms.state = qsim::QuantumState(layout, qsim::BasisIndex(lp, 0));

  for (u32 j = 0; j < lp; ++j) {
    u32 t = lp - 1 - j;  // bit significance of this qubit
    run.ms.state.h(j);
    u64 bshift = mod_q(bp_scaled << t, Nst);
    run.ms.state.r_alpha(j, double(bshift) / double(Nst));

    mhe::MheCiphertext z_acc = mhe::mhe_trivial(0, authority.params());
    for (std::size_t i = 0; i < ap.size(); ++i) {
      // Angle contribution -a'_i s_i 2^t / N*, fed digit-by-digit.
      u64 beta = mod_q(Nst - mod_q(ap[i] << t, Nst), Nst);
      std::vector<mhe::MheCiphertext> digits;
      digits.reserve(ns);
      for (u32 k = 1; k <= ns; ++k)
        digits.push_back(mhe::mhe_scale_bit(enc_s[i], static_cast<int>((beta >> (ns - k)) & 1)));
      mhe::MheCiphertext enc_d = authority.encrypted_crot(run.ms.state, j, digits, rng);
      z_acc = mhe::mhe_xor(enc_d, z_acc);
    }
    run.ms.slots.push_back(j);
    run.ms.enc_x.push_back(authority.encrypt_bit(0, rng));
    run.ms.enc_z.push_back(z_acc);
  }

  std::vector<u32> all(run.ms.slots);
  authority.qft_refresh(run.ms, all, true, rng);

  run.crot_units = authority.crot_units() - crot0;
  run.qft_rotations = authority.refresh_rotations() - qft0;
  return run;
}

BlindRotationOutput measure_run(const BlindRotationRun& run, Rng& rng) {
  qsim::QuantumState copy = run.ms.state;
  std::vector<u32> outcome = copy.measure(run.ms.slots, rng);
  BlindRotationOutput out;
  out.c.assign(outcome.begin(), outcome.end());
  out.enc_d1 = run.ms.enc_x;
  out.crot_units = run.crot_units;
  out.qft_rotations = run.qft_rotations;
  out.prop41_applicable = run.prop41_applicable;
  return out;
}

BlindRotationOutput blind_rotate(const lwe::LweCiphertext& ct,
                                 const std::vector<mhe::MheCiphertext>& enc_s,
                                 const BootstrapParams& bp, qfhe::CrotAuthority& authority,
                                 Rng& rng) {
  BlindRotationRun run = blind_rotate_state(ct, enc_s, bp, authority, rng);
  return measure_run(run, rng);
}

std::vector<double> outcome_distribution(double phase, u64 L_prime) {
  if (!is_power_of_two(L_prime)) throw std::invalid_argument("outcome_distribution: L' power of two");
  double Lp = double(L_prime);
  std::vector<double> p(L_prime, 0.0);
  for (u64 k = 0; k < L_prime; ++k) {
    double rt = double(k) / Lp - phase;
    double denom = std::sin(M_PI * rt);
    if (std::abs(denom) < 1e-12) {
      p[k] = 1.0;
      continue;
    }
    double num = std::sin(M_PI * rt * Lp);
    p[k] = (num * num) / (denom * denom) / (Lp * Lp);
  }
  return p;
}

double prop41_bound(const lwe::LweParams& params, const BootstrapParams& bp) {
  double Lp = double(bp.L_prime);
  double term = Lp * double(params.B) / double(params.Q) +
                Lp * double(params.n) / (2.0 * double(bp.N_star));
  double pi4 = M_PI * M_PI * M_PI * M_PI;
  double bound = 1.0 - term * term * term * term * pi4 / 3.0;
  return bound < 0.0 ? 0.0 : bound;
}

double prop42_bound() { return 4.0 / (M_PI * M_PI); }

RefineResult multishot_refine(const lwe::LweCiphertext& ct,
                              const std::vector<mhe::MheCiphertext>& enc_s,
                              const BootstrapParams& bp, qfhe::CrotAuthority& authority,
                              u64 shots, Rng& rng) {
  if (bp.L_prime >= ct.params.L)
    throw std::invalid_argument("multishot_refine: requires L' < L (compressed readout)");
  BlindRotationRun run = blind_rotate_state(ct, enc_s, bp, authority, rng);
  std::vector<int> d1;
  for (const auto& ctx : run.ms.enc_x) d1.push_back(authority.decrypt_bit(ctx));

  RefineResult res;
  res.histogram.assign(bp.L_prime, 0);
  res.enough_shots = shots >= bp.L_prime;
  for (u64 s = 0; s < shots; ++s) {
    qsim::QuantumState copy = run.ms.state;
    std::vector<u32> c = copy.measure(run.ms.slots, rng);
    u64 m = 0;
    for (std::size_t j = 0; j < c.size(); ++j)
      m = (m << 1) | (u64(c[j]) ^ u64(d1[j]));
    ++res.histogram[m];
  }

  double best = -1e300;
  for (u64 m = 0; m < ct.params.L; ++m) {
    auto p = outcome_distribution(double(m) / double(ct.params.L), bp.L_prime);
    double ll = 0.0;
    for (u64 k = 0; k < bp.L_prime; ++k)
      if (res.histogram[k]) ll += double(res.histogram[k]) * std::log(p[k] + 1e-300);
    if (ll > best) {
      best = ll;
      res.m_estimate = m;
    }
  }
  return res;
}

}  // namespace qboots::blindrot
