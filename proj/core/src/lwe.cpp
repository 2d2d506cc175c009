#include "qboots/lwe.hpp"

#include <stdexcept>

#include "qboots/gaussian.hpp"

namespace qboots::lwe {

void LweParams::validate() const {
  if (!is_power_of_two(Q) || !is_power_of_two(L))
    throw std::invalid_argument("LweParams: Q and L must be powers of two");
  if (L > Q) throw std::invalid_argument("LweParams: L must not exceed Q");
  if (n < 1) throw std::invalid_argument("LweParams: n >= 1 required");
  if (double(B) >= decrypt_margin())
    throw std::invalid_argument("LweParams: B must stay below (Q/L)/2");
}

LweSecretKey lwe_keygen(const LweParams& params, Rng& rng) {
  params.validate();
  LweSecretKey key;
  key.s.resize(params.n);
  for (auto& bit : key.s) bit = static_cast<std::uint8_t>(uniform_bit(rng));
  return key;
}

static u64 dot_key(const std::vector<u64>& a, const LweSecretKey& key, u64 Q) {
  u64 acc = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (key.s[i]) acc = add_mod(acc, a[i], Q);
  return acc;
}

LweCiphertext lwe_encrypt_with_error(const LweSecretKey& key, u64 m, i64 e,
                                     const LweParams& params, Rng& rng) {
  params.validate();
  if (m >= params.L) throw std::invalid_argument("lwe_encrypt: m outside [L]");
  LweCiphertext ct;
  ct.params = params;
  ct.a.resize(params.n);
  for (auto& ai : ct.a) ai = uniform_u64(rng, params.Q);
  u64 err = mod_q(static_cast<u64>(e) , params.Q);
  ct.b = add_mod(add_mod(dot_key(ct.a, key, params.Q), mul_mod(m, params.scale(), params.Q), params.Q),
                 err, params.Q);
  ct.noise_bound = double(e < 0 ? -e : e);
  return ct;
}

LweCiphertext lwe_encrypt(const LweSecretKey& key, u64 m, const LweParams& params, Rng& rng) {
  DiscreteGaussian chi(params.B);
  LweCiphertext ct = lwe_encrypt_with_error(key, m, chi.sample(rng), params, rng);
  ct.noise_bound = double(params.B);
  return ct;
}

LweCiphertext lwe_encrypt_raw(const LweSecretKey& key, u64 raw, const LweParams& params,
                              Rng& rng, double noise_bound) {
  DiscreteGaussian chi(params.B);
  LweCiphertext ct;
  ct.params = params;
  ct.a.resize(params.n);
  for (auto& ai : ct.a) ai = uniform_u64(rng, params.Q);
  u64 err = mod_q(static_cast<u64>(chi.sample(rng)), params.Q);
  ct.b = add_mod(add_mod(dot_key(ct.a, key, params.Q), mod_q(raw, params.Q), params.Q), err,
                 params.Q);
  ct.noise_bound = noise_bound;
  return ct;
}

LwePublicKey lwe_public_key(const LweSecretKey& key, const LweParams& params, u32 t, Rng& rng) {
  DiscreteGaussian chi(params.B);
  LwePublicKey pk;
  pk.params = params;
  pk.A.resize(t);
  pk.b.resize(t);
  for (u32 r = 0; r < t; ++r) {
    pk.A[r].resize(params.n);
    for (auto& x : pk.A[r]) x = uniform_u64(rng, params.Q);
    pk.b[r] = add_mod(dot_key(pk.A[r], key, params.Q),
                      mod_q(static_cast<u64>(chi.sample(rng)), params.Q), params.Q);
  }
  return pk;
}

LweCiphertext lwe_encrypt_public(const LwePublicKey& pk, u64 m, Rng& rng) {
  const LweParams& p = pk.params;
  if (m >= p.L) throw std::invalid_argument("lwe_encrypt_public: m outside [L]");
  LweCiphertext ct;
  ct.params = p;
  ct.a.assign(p.n, 0);
  ct.b = mul_mod(m, p.scale(), p.Q);
  u64 picked = 0;
  for (std::size_t r = 0; r < pk.A.size(); ++r) {
    if (!uniform_bit(rng)) continue;
    ++picked;
    for (u32 i = 0; i < p.n; ++i) ct.a[i] = add_mod(ct.a[i], pk.A[r][i], p.Q);
    ct.b = add_mod(ct.b, pk.b[r], p.Q);
  }
  ct.noise_bound = double(picked) * double(p.B);
  return ct;
}

u64 lwe_phase(const LweSecretKey& key, const LweCiphertext& ct) {
  return sub_mod(ct.b, dot_key(ct.a, key, ct.params.Q), ct.params.Q);
}

u64 lwe_decrypt(const LweSecretKey& key, const LweCiphertext& ct) {
  u64 phase = lwe_phase(key, ct);
  // floor(L/Q * phase + 1/2) mod L, ties up.
  u128 num = u128(phase) * ct.params.L;
  u64 m = static_cast<u64>((2 * num + ct.params.Q) / (2 * u128(ct.params.Q)));
  return mod_q(m, ct.params.L);
}

static void check_match(const LweCiphertext& c1, const LweCiphertext& c2) {
  if (!(c1.params == c2.params)) throw std::invalid_argument("lwe: params mismatch");
}

LweCiphertext lwe_add(const LweCiphertext& c1, const LweCiphertext& c2) {
  check_match(c1, c2);
  LweCiphertext out = c1;
  for (std::size_t i = 0; i < out.a.size(); ++i) out.a[i] = add_mod(out.a[i], c2.a[i], c1.params.Q);
  out.b = add_mod(out.b, c2.b, c1.params.Q);
  out.noise_bound = c1.noise_bound + c2.noise_bound;
  return out;
}

LweCiphertext lwe_sub(const LweCiphertext& c1, const LweCiphertext& c2) {
  check_match(c1, c2);
  LweCiphertext out = c1;
  for (std::size_t i = 0; i < out.a.size(); ++i) out.a[i] = sub_mod(out.a[i], c2.a[i], c1.params.Q);
  out.b = sub_mod(out.b, c2.b, c1.params.Q);
  out.noise_bound = c1.noise_bound + c2.noise_bound;
  return out;
}

LweCiphertext lwe_scale(const LweCiphertext& ct, i64 k) {
  LweCiphertext out = ct;
  u64 ku = mod_q(static_cast<u64>(k), ct.params.Q);
  for (auto& ai : out.a) ai = mul_mod(ai, ku, ct.params.Q);
  out.b = mul_mod(out.b, ku, ct.params.Q);
  out.noise_bound = ct.noise_bound * double(k < 0 ? -k : k);
  return out;
}

LweCiphertext lwe_trivial(u64 raw, const LweParams& params, u32 n) {
  LweCiphertext ct;
  ct.params = params;
  ct.a.assign(n, 0);
  ct.b = mod_q(raw, params.Q);
  ct.noise_bound = 0.0;
  return ct;
}

}  // namespace qboots::lwe
