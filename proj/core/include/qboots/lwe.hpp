#ifndef QBOOTS_LWE_HPP
#define QBOOTS_LWE_HPP

#include <cstdint>
#include <vector>

#include "qboots/common.hpp"

namespace qboots::lwe {

/// LWE_{Q,L,n}: (a, a.s + m*Q/L + e) over Z_Q with binary secret key.
struct LweParams {
  u64 Q = 0;   // ciphertext modulus, power of two
  u64 L = 0;   // plaintext space 2^l, power of two
  u32 n = 0;   // dimension
  u64 B = 0;   // fresh-noise bound (discrete-Gaussian support radius)

  void validate() const;
  u64 scale() const { return Q / L; }          // plaintext step
  double decrypt_margin() const { return double(Q / L) / 2.0; }
  bool operator==(const LweParams&) const = default;
};

struct LweSecretKey {
  std::vector<std::uint8_t> s;  // bits
};

/// Optional public-key material (x^T A form); protocol paths use the
/// secret-key constructor.
struct LwePublicKey {
  std::vector<std::vector<u64>> A;  // t x n
  std::vector<u64> b;               // t
  LweParams params;
};

struct LweCiphertext {
  std::vector<u64> a;
  u64 b = 0;
  LweParams params;
  double noise_bound = 0.0;  // worst-case ledger, never secret-dependent
};

LweSecretKey lwe_keygen(const LweParams& params, Rng& rng);

LweCiphertext lwe_encrypt(const LweSecretKey& key, u64 m, const LweParams& params, Rng& rng);

/// Test hook: deterministic error injection.
LweCiphertext lwe_encrypt_with_error(const LweSecretKey& key, u64 m, i64 e,
                                     const LweParams& params, Rng& rng);

/// Encrypt a raw phase offset (value added to b directly, no Q/L scaling).
/// Used by key-switching tables whose plaintext scale is not Q/L.
LweCiphertext lwe_encrypt_raw(const LweSecretKey& key, u64 raw, const LweParams& params,
                              Rng& rng, double noise_bound);

LwePublicKey lwe_public_key(const LweSecretKey& key, const LweParams& params, u32 t, Rng& rng);
LweCiphertext lwe_encrypt_public(const LwePublicKey& pk, u64 m, Rng& rng);

u64 lwe_decrypt(const LweSecretKey& key, const LweCiphertext& ct);

/// Test oracle: exact phase b - a.s mod Q.
u64 lwe_phase(const LweSecretKey& key, const LweCiphertext& ct);

LweCiphertext lwe_add(const LweCiphertext& c1, const LweCiphertext& c2);
LweCiphertext lwe_sub(const LweCiphertext& c1, const LweCiphertext& c2);
LweCiphertext lwe_scale(const LweCiphertext& ct, i64 k);

/// Trivial (noiseless, keyless) encryption (0, raw).
LweCiphertext lwe_trivial(u64 raw, const LweParams& params, u32 n);

}  // namespace qboots::lwe

#endif
