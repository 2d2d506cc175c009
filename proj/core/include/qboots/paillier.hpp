#ifndef QBOOTS_PAILLIER_HPP
#define QBOOTS_PAILLIER_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "qboots/common.hpp"

namespace qboots::paillier {

/// Paillier over N = p*q with g = N + 1: Enc(m; r) = g^m r^N mod N^2.
/// Toy moduli only; N^2 must fit in 64 bits so u128 products stay exact.
struct PaillierParams {
  u64 N = 0;
  u64 N2 = 0;
  u32 bits = 0;  // ceil(log2 N), size of the randomness register
};

struct PaillierSecretKey {
  u64 p = 0, q = 0;
  u64 lambda = 0;  // phi(N)
  u64 mu = 0;      // phi(N)^{-1} mod N, 0 when degenerate
  bool degenerate = false;  // gcd(N, phi(N)) != 1: encryption not bijective
  PaillierParams params;
};

struct PaillierPublicKey {
  PaillierParams params;
  u64 g() const { return params.N + 1; }
};

struct PaillierKeyPair {
  PaillierSecretKey sk;
  PaillierPublicKey pk;
};

u64 powmod(u64 base, u64 exp, u64 mod);
u64 gcd_u64(u64 a, u64 b);
/// Inverse mod `mod`; throws if gcd(a, mod) != 1.
u64 invmod(u64 a, u64 mod);

PaillierKeyPair paillier_keygen(u64 p, u64 q);
/// Keygen from a whitelist of toy semiprimes, selected by modulus value.
PaillierKeyPair paillier_keygen_toy(u64 N);
/// Like paillier_keygen but tolerates gcd(N, phi(N)) != 1, marking the key
/// degenerate. Decryption and randomness recovery refuse degenerate keys;
/// only the enumeration oracle works there.
PaillierKeyPair paillier_keygen_unchecked(u64 p, u64 q);

u64 paillier_encrypt(const PaillierPublicKey& pk, u64 m, u64 r);
u64 paillier_encrypt(const PaillierPublicKey& pk, u64 m, Rng& rng);
u64 paillier_decrypt(const PaillierSecretKey& sk, u64 ct);

/// Homomorphic addition of plaintexts: ciphertext product.
u64 paillier_add(const PaillierPublicKey& pk, u64 c1, u64 c2);
/// Plaintext multiple: ciphertext power.
u64 paillier_plain_mult(const PaillierPublicKey& pk, u64 ct, u64 k);
/// Ciphertext inverse mod N^2 (negates the plaintext).
u64 paillier_ct_inverse(const PaillierPublicKey& pk, u64 ct);

/// Recover the unique r with ct = Enc(m; r); valid since m -> g^m and
/// r -> r^N are bijections on Z_N and Z_N^* respectively.
u64 paillier_recover_randomness(const PaillierSecretKey& sk, u64 ct, u64 m);

/// Sample r uniformly from Z_N^*.
u64 sample_unit(const PaillierParams& params, Rng& rng);

/// Enumeration oracle: all (m, r) in {0,1} x Z_N^* with Enc(m; r) = ct.
/// Exactly one for bijective moduli; several for degenerate ones.
std::vector<std::pair<u64, u64>> paillier_bit_preimages(const PaillierParams& params, u64 ct);

/// Gadget pair for XOR with an encrypted bit s0: given c_s0 = Enc(s0; r0),
/// Enc(m) xor Enc(s0) = c_s0 * (c_s0^{-2})^m * g^? handled by xor_with_bit.
struct PhexorGadget {
  u64 c_s0 = 0;       // Enc(s0)
  u64 c_neg2s0 = 0;   // Enc(-2 s0) = (c_s0^{-1})^2
};

PhexorGadget make_xor_gadget(const PaillierPublicKey& pk, u64 c_s0);

/// Enc(m xor s0) as Enc(m) * c_s0 * c_neg2s0^m for a KNOWN plaintext bit m.
u64 phe_xor_with_plain_bit(const PaillierPublicKey& pk, const PhexorGadget& gadget,
                           u64 c_m, u64 m);

}  // namespace qboots::paillier

#endif
