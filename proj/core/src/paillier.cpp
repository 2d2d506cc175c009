#include "qboots/paillier.hpp"

#include <stdexcept>

namespace qboots::paillier {

u64 powmod(u64 base, u64 exp, u64 mod) {
  u64 r = 1 % mod;
  base %= mod;
  while (exp) {
    if (exp & 1) r = static_cast<u64>((u128(r) * base) % mod);
    base = static_cast<u64>((u128(base) * base) % mod);
    exp >>= 1;
  }
  return r;
}

u64 gcd_u64(u64 a, u64 b) {
  while (b) { u64 t = a % b; a = b; b = t; }
  return a;
}

u64 invmod(u64 a, u64 mod) {
  i64 t = 0, newt = 1;
  i64 r = static_cast<i64>(mod), newr = static_cast<i64>(a % mod);
  while (newr != 0) {
    i64 q = r / newr;
    i64 tmp = t - q * newt; t = newt; newt = tmp;
    tmp = r - q * newr; r = newr; newr = tmp;
  }
  if (r != 1) throw std::invalid_argument("invmod: not invertible");
  if (t < 0) t += static_cast<i64>(mod);
  return static_cast<u64>(t);
}

static bool is_prime(u64 x) {
  if (x < 2) return false;
  for (u64 d = 2; d * d <= x; ++d)
    if (x % d == 0) return false;
  return true;
}

PaillierKeyPair paillier_keygen_unchecked(u64 p, u64 q) {
  if (!is_prime(p) || !is_prime(q)) throw std::invalid_argument("paillier_keygen: p, q must be prime");
  if (p == q) throw std::invalid_argument("paillier_keygen: p and q must differ");
  u64 N = p * q;
  if (N > (u64(1) << 31)) throw std::invalid_argument("paillier_keygen: N^2 must fit in 64 bits");
  u64 phi = (p - 1) * (q - 1);
  PaillierKeyPair kp;
  kp.sk.p = p;
  kp.sk.q = q;
  kp.sk.lambda = phi;
  kp.sk.degenerate = gcd_u64(N, phi) != 1;
  kp.sk.mu = kp.sk.degenerate ? 0 : invmod(phi, N);
  kp.sk.params.N = N;
  kp.sk.params.N2 = N * N;
  u32 bits = 0;
  for (u64 x = N - 1; x; x >>= 1) ++bits;
  kp.sk.params.bits = bits;
  kp.pk.params = kp.sk.params;
  return kp;
}

PaillierKeyPair paillier_keygen(u64 p, u64 q) {
  PaillierKeyPair kp = paillier_keygen_unchecked(p, q);
  if (kp.sk.degenerate)
    throw std::invalid_argument("paillier_keygen: gcd(N, phi(N)) != 1, modulus degenerate");
  return kp;
}

PaillierKeyPair paillier_keygen_toy(u64 N) {
  switch (N) {
    case 15: return paillier_keygen(3, 5);
    case 21: return paillier_keygen_unchecked(3, 7);  // gcd(21, phi) = 3: degenerate
    case 33: return paillier_keygen(3, 11);
    case 35: return paillier_keygen(5, 7);
    default: throw std::invalid_argument("paillier_keygen_toy: modulus not whitelisted");
  }
}

u64 paillier_encrypt(const PaillierPublicKey& pk, u64 m, u64 r) {
  const auto& p = pk.params;
  if (m >= p.N) throw std::invalid_argument("paillier_encrypt: m outside Z_N");
  if (gcd_u64(r % p.N, p.N) != 1) throw std::invalid_argument("paillier_encrypt: r not a unit");
  u64 gm = powmod(pk.g(), m, p.N2);
  u64 rn = powmod(r, p.N, p.N2);
  return static_cast<u64>((u128(gm) * rn) % p.N2);
}

u64 sample_unit(const PaillierParams& params, Rng& rng) {
  for (;;) {
    u64 r = 1 + uniform_u64(rng, params.N - 1);
    if (gcd_u64(r, params.N) == 1) return r;
  }
}

u64 paillier_encrypt(const PaillierPublicKey& pk, u64 m, Rng& rng) {
  return paillier_encrypt(pk, m, sample_unit(pk.params, rng));
}

u64 paillier_decrypt(const PaillierSecretKey& sk, u64 ct) {
  const auto& p = sk.params;
  if (sk.degenerate) throw std::invalid_argument("paillier_decrypt: degenerate modulus");
  if (gcd_u64(ct % p.N2, p.N2) != 1) throw std::invalid_argument("paillier_decrypt: ct not a unit");
  u64 x = powmod(ct, sk.lambda, p.N2);
  u64 l = (x - 1) / p.N;
  return static_cast<u64>((u128(l) * sk.mu) % p.N);
}

u64 paillier_add(const PaillierPublicKey& pk, u64 c1, u64 c2) {
  return static_cast<u64>((u128(c1) * c2) % pk.params.N2);
}

u64 paillier_plain_mult(const PaillierPublicKey& pk, u64 ct, u64 k) {
  return powmod(ct, k, pk.params.N2);
}

u64 paillier_ct_inverse(const PaillierPublicKey& pk, u64 ct) {
  return invmod(ct, pk.params.N2);
}

std::vector<std::pair<u64, u64>> paillier_bit_preimages(const PaillierParams& params, u64 ct) {
  std::vector<std::pair<u64, u64>> out;
  PaillierPublicKey pk{params};
  for (u64 m = 0; m < 2; ++m)
    for (u64 r = 1; r < params.N; ++r) {
      if (gcd_u64(r, params.N) != 1) continue;
      if (paillier_encrypt(pk, m, r) == ct) out.emplace_back(m, r);
    }
  return out;
}

u64 paillier_recover_randomness(const PaillierSecretKey& sk, u64 ct, u64 m) {
  const auto& p = sk.params;
  if (sk.degenerate)
    throw std::invalid_argument("paillier_recover_randomness: degenerate modulus");
  // Divide out g^m, then invert r -> r^N on Z_N^*: exponent N^{-1} mod phi(N)
  // is valid because gcd(N, phi(N)) = 1 for accepted moduli.
  u64 gm_inv = invmod(powmod(sk.params.N + 1, m, p.N2), p.N2);
  u64 rn = static_cast<u64>((u128(ct) * gm_inv) % p.N2);
  u64 d = invmod(p.N % sk.lambda, sk.lambda);
  u64 r = powmod(rn % p.N, d, p.N);
  if (paillier_encrypt(PaillierPublicKey{p}, m, r) != ct)
    throw std::invalid_argument("paillier_recover_randomness: no preimage");
  return r;
}

PhexorGadget make_xor_gadget(const PaillierPublicKey& pk, u64 c_s0) {
  PhexorGadget g;
  g.c_s0 = c_s0;
  g.c_neg2s0 = powmod(paillier_ct_inverse(pk, c_s0), 2, pk.params.N2);
  return g;
}

u64 phe_xor_with_plain_bit(const PaillierPublicKey& pk, const PhexorGadget& gadget,
                           u64 c_m, u64 m) {
  if (m > 1) throw std::invalid_argument("phe_xor_with_plain_bit: m must be a bit");
  u64 out = paillier_add(pk, c_m, gadget.c_s0);
  if (m) out = paillier_add(pk, out, gadget.c_neg2s0);
  return out;
}

}  // namespace qboots::paillier
