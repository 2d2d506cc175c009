#include "qboots/mhe.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "qboots/gaussian.hpp"

namespace qboots::mhe {

void MheParams::validate() const {
  if (!is_power_of_two(Qp)) throw std::invalid_argument("MheParams: Q' must be a power of two");
  if (np < 1) throw std::invalid_argument("MheParams: n' >= 1 required");
  if (2 * beta_init >= Qp) throw std::invalid_argument("MheParams: beta_init too large");
}

// Gadget: G[r][r*l + j] = 2^j, l = log Q'.
static u64 gadget_entry(const MheParams& p, u32 r, u32 c) {
  u32 l = p.log_qp();
  if (c / l != r) return 0;
  return u64(1) << (c % l);
}

MheKeyPair mhe_keygen(const MheParams& params, Rng& rng, int key_id) {
  params.validate();
  MheKeyPair kp;
  kp.sk.e.resize(params.np);
  kp.sk.key_id = key_id;
  for (auto& bit : kp.sk.e) bit = static_cast<std::uint8_t>(uniform_bit(rng));

  // Top n' rows uniform, last row = e^T * top, so sk^T A' = 0 exactly.
  Mat A = Mat::zero(params.rows(), params.np);
  for (u32 r = 0; r < params.np; ++r)
    for (u32 c = 0; c < params.np; ++c) A.at(r, c) = uniform_u64(rng, params.Qp);
  for (u32 c = 0; c < params.np; ++c) {
    u64 acc = 0;
    for (u32 r = 0; r < params.np; ++r)
      if (kp.sk.e[r]) acc = add_mod(acc, A.at(r, c), params.Qp);
    A.at(params.np, c) = acc;
  }
  kp.pk.Aprime = std::move(A);
  kp.pk.params = params;
  kp.pk.key_id = key_id;
  return kp;
}

MheCiphertext mhe_encrypt(const MhePublicKey& pk, int mu, Rng& rng) {
  const MheParams& p = pk.params;
  if (mu != 0 && mu != 1) throw std::invalid_argument("mhe_encrypt: mu must be a bit");
  DiscreteGaussian chi(p.beta_init);
  MheCiphertext ct;
  ct.params = p;
  ct.key_id = pk.key_id;
  ct.C = Mat::zero(p.rows(), p.cols());

  // One random secret column per gadget column: C = A'S + E + mu G.
  std::vector<u64> s(p.np);
  for (u32 c = 0; c < p.cols(); ++c) {
    for (auto& si : s) si = uniform_u64(rng, p.Qp);
    for (u32 r = 0; r < p.rows(); ++r) {
      u64 acc = 0;
      for (u32 i = 0; i < p.np; ++i)
        acc = add_mod(acc, mul_mod(pk.Aprime.at(r, i), s[i], p.Qp), p.Qp);
      acc = add_mod(acc, mod_q(static_cast<u64>(chi.sample(rng)), p.Qp), p.Qp);
      if (mu) acc = add_mod(acc, gadget_entry(p, r, c), p.Qp);
      ct.C.at(r, c) = acc;
    }
  }
  ct.noise = double(p.rows()) * double(p.beta_init);
  return ct;
}

MheCiphertext mhe_trivial(int mu, const MheParams& params, int key_id) {
  params.validate();
  if (mu != 0 && mu != 1) throw std::invalid_argument("mhe_trivial: mu must be a bit");
  MheCiphertext ct;
  ct.params = params;
  ct.key_id = key_id;
  ct.C = Mat::zero(params.rows(), params.cols());
  if (mu)
    for (u32 r = 0; r < params.rows(); ++r)
      for (u32 c = 0; c < params.cols(); ++c) ct.C.at(r, c) = gadget_entry(params, r, c);
  ct.noise = 0.0;
  return ct;
}

lwe::LweSecretKey mhe_extraction_key(const MheSecretKey& sk) {
  return lwe::LweSecretKey{std::vector<std::uint8_t>(sk.e.begin(), sk.e.end())};
}

lwe::LweCiphertext mhe_extract_lwe(const MheCiphertext& ct, u32 k) {
  const MheParams& p = ct.params;
  u32 l = p.log_qp();
  if (k < 1 || k > l) throw std::invalid_argument("mhe_extract_lwe: k outside [1, log Q']");
  // Column (n'+1)l - k carries mu * Q'/2^k in the key's last coordinate.
  u32 col = p.cols() - k;
  lwe::LweCiphertext out;
  out.params = lwe::LweParams{p.Qp, u64(1) << k, p.np, p.beta_init};
  out.a.resize(p.np);
  for (u32 i = 0; i < p.np; ++i) out.a[i] = ct.C.at(i, col);
  out.b = ct.C.at(p.np, col);
  out.noise_bound = ct.noise;
  return out;
}

lwe::LweCiphertext mhe_convert(const MheCiphertext& ct) { return mhe_extract_lwe(ct, 1); }

int mhe_decrypt(const MheSecretKey& sk, const MheCiphertext& ct) {
  lwe::LweSecretKey ext = mhe_extraction_key(sk);
  return static_cast<int>(lwe::lwe_decrypt(ext, mhe_convert(ct)));
}

static void check_pair(const MheCiphertext& c0, const MheCiphertext& c1) {
  if (!(c0.params == c1.params)) throw std::invalid_argument("mhe: params mismatch");
  if (c0.key_id >= 0 && c1.key_id >= 0 && c0.key_id != c1.key_id)
    throw std::invalid_argument("mhe: key mismatch");
}

static int merged_key(const MheCiphertext& c0, const MheCiphertext& c1) {
  return c0.key_id >= 0 ? c0.key_id : c1.key_id;
}

MheCiphertext mhe_add(const MheCiphertext& c0, const MheCiphertext& c1) {
  check_pair(c0, c1);
  MheCiphertext out = c0;
  for (std::size_t i = 0; i < out.C.v.size(); ++i)
    out.C.v[i] = add_mod(out.C.v[i], c1.C.v[i], c0.params.Qp);
  out.noise = c0.noise + c1.noise;
  out.key_id = merged_key(c0, c1);
  return out;
}

MheCiphertext mhe_sub(const MheCiphertext& c0, const MheCiphertext& c1) {
  check_pair(c0, c1);
  MheCiphertext out = c0;
  for (std::size_t i = 0; i < out.C.v.size(); ++i)
    out.C.v[i] = sub_mod(out.C.v[i], c1.C.v[i], c0.params.Qp);
  out.noise = c0.noise + c1.noise;
  out.key_id = merged_key(c0, c1);
  return out;
}

// C0 * G^{-1}(C1), the bit decomposition consumed on the fly. Partial sums
// stay unreduced while cols * Q' fits in 64 bits.
MheCiphertext mhe_mul(const MheCiphertext& c0, const MheCiphertext& c1) {
  check_pair(c0, c1);
  const MheParams& p = c0.params;
  const u32 l = p.log_qp();
  const u32 rows = p.rows();
  const u32 cols = p.cols();
  u32 log_cols = 0;
  while ((u64(1) << log_cols) < cols) ++log_cols;
  const bool deferred = p.log_qp() + log_cols < 64;

  MheCiphertext out;
  out.params = p;
  out.key_id = merged_key(c0, c1);
  out.C = Mat::zero(rows, cols);
  std::vector<u64> acc(rows);
  for (u32 c = 0; c < cols; ++c) {
    std::fill(acc.begin(), acc.end(), u64{0});
    for (u32 r1 = 0; r1 < rows; ++r1) {
      u64 w = c1.C.at(r1, c);
      for (u32 j = 0; j < l; ++j) {
        if ((w >> j) & 1) {
          u32 m = r1 * l + j;
          for (u32 r = 0; r < rows; ++r) {
            acc[r] += c0.C.at(r, m);
            if (!deferred) acc[r] = mod_q(acc[r], p.Qp);
          }
        }
      }
    }
    for (u32 r = 0; r < rows; ++r) out.C.at(r, c) = mod_q(acc[r], p.Qp);
  }
  out.noise = double(cols) * c0.noise + c1.noise;
  return out;
}

MheCiphertext mhe_nand(const MheCiphertext& c0, const MheCiphertext& c1) {
  return mhe_sub(mhe_trivial(1, c0.params, merged_key(c0, c1)), mhe_mul(c0, c1));
}

MheCiphertext mhe_scale_bit(const MheCiphertext& ct, int bit) {
  if (bit != 0 && bit != 1) throw std::invalid_argument("mhe_scale_bit: bit expected");
  return bit ? ct : mhe_trivial(0, ct.params, ct.key_id);
}

MheCiphertext mhe_xor(const MheCiphertext& fresh, const MheCiphertext& acc) {
  check_pair(fresh, acc);
  MheCiphertext prod = mhe_mul(fresh, acc);
  for (auto& x : prod.C.v) x = mul_mod(x, 2, fresh.params.Qp);
  prod.noise *= 2.0;
  return mhe_sub(mhe_add(fresh, acc), prod);
}

// ---- key switching ----

KeySwitchKey make_keyswitch_key(const MheSecretKey& src, const MheParams& src_params,
                                const lwe::LweSecretKey& dest_key, const lwe::LweParams& dest,
                                Rng& rng) {
  src_params.validate();
  dest.validate();
  KeySwitchKey ksk;
  ksk.dest = dest;
  ksk.src_Qp = src_params.Qp;
  ksk.src_np = src_params.np;
  ksk.err_fresh = double(dest.B);
  u32 l = src_params.log_qp();
  ksk.table.resize(src_params.np);
  for (u32 i = 0; i < src_params.np; ++i) {
    ksk.table[i].reserve(l);
    for (u32 j = 0; j < l; ++j) {
      u128 num = (u128(src.e[i]) << j) * dest.Q;
      u64 raw = static_cast<u64>((2 * num + src_params.Qp) / (2 * u128(src_params.Qp)));
      ksk.table[i].push_back(lwe::lwe_encrypt_raw(dest_key, raw, dest, rng, double(dest.B)));
    }
  }
  return ksk;
}

double key_switch_noise_bound(const KeySwitchKey& ksk, double err_m, bool truncated) {
  u64 lq = log2_exact(ksk.dest.Q);
  u64 lqp = log2_exact(ksk.src_Qp);
  double terms = double(ksk.src_np) * double(truncated ? lq : lqp);
  double bound = ksk.err_fresh * terms +
                 err_m * double(ksk.dest.Q) / double(ksk.src_Qp) + std::sqrt(terms);
  if (truncated) bound += double(ksk.src_np);  // dropped low-order table terms
  return bound;
}

lwe::LweCiphertext key_switch(const lwe::LweCiphertext& ct, const KeySwitchKey& ksk,
                              bool truncated) {
  if (ct.params.Q != ksk.src_Qp || ct.a.size() != ksk.src_np)
    throw std::invalid_argument("key_switch: ciphertext does not match table");
  u32 l = static_cast<u32>(log2_exact(ksk.src_Qp));
  u128 num = u128(ct.b) * ksk.dest.Q;
  u64 b0 = static_cast<u64>((2 * num + ksk.src_Qp) / (2 * u128(ksk.src_Qp)));
  lwe::LweCiphertext out = lwe::lwe_trivial(b0, ksk.dest, ksk.dest.n);
  for (u32 i = 0; i < ksk.src_np; ++i)
    for (u32 j = 0; j < l; ++j) {
      if (((ct.a[i] >> j) & 1) == 0) continue;
      if (truncated && ((u128(1) << j) * ksk.dest.Q) < ksk.src_Qp) continue;
      out = lwe::lwe_sub(out, ksk.table[i][j]);
    }
  out.params.L = ct.params.L;
  out.noise_bound = key_switch_noise_bound(ksk, ct.noise_bound, truncated);
  return out;
}

}  // namespace qboots::mhe
