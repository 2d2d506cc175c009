#ifndef QBOOTS_MHE_HPP
#define QBOOTS_MHE_HPP

#include <cstdint>
#include <vector>

#include "qboots/common.hpp"
#include "qboots/lwe.hpp"

namespace qboots::mhe {

/// GSW-style matrix scheme: C = A'S + E + mu*G over Z_{Q'}, with
/// sk = (-e_sk, 1). Columns are LWE encryptions of mu at power-of-two scales.
struct MheParams {
  u64 Qp = 0;             // modulus Q', power of two
  u32 np = 0;             // dimension n' (rows = n'+1)
  u64 beta_init = 0;      // fresh-noise bound
  double beta_acc = 0.0;  // accumulated noise budget

  u32 log_qp() const { return static_cast<u32>(log2_exact(Qp)); }
  u32 rows() const { return np + 1; }
  u32 cols() const { return rows() * log_qp(); }
  void validate() const;
  /// Stricter budget required when ciphertexts feed the combine step.
  double combine_budget(u64 L_prime, u64 l_prime) const {
    return double(Qp) / (8.0 * double(L_prime) * double(l_prime) * double(np + 1));
  }
  bool operator==(const MheParams&) const = default;
};

struct Mat {
  u32 rows = 0, cols = 0;
  std::vector<u64> v;  // row-major
  u64& at(u32 r, u32 c) { return v[std::size_t(r) * cols + c]; }
  u64 at(u32 r, u32 c) const { return v[std::size_t(r) * cols + c]; }
  static Mat zero(u32 r, u32 c) { return Mat{r, c, std::vector<u64>(std::size_t(r) * c, 0)}; }
};

struct MheSecretKey {
  std::vector<std::uint8_t> e;  // n' bits; sk = (-e, 1)
  int key_id = 0;
};

struct MhePublicKey {
  Mat Aprime;  // (n'+1) x n', last row = e^T A
  MheParams params;
  int key_id = 0;
};

struct MheKeyPair {
  MheSecretKey sk;
  MhePublicKey pk;
};

struct MheCiphertext {
  Mat C;
  MheParams params;
  double noise = 0.0;  // bound on |sk^T E| per column (ledger)
  int key_id = 0;

  bool within(double budget) const { return noise < budget; }
};

MheKeyPair mhe_keygen(const MheParams& params, Rng& rng, int key_id = 0);

MheCiphertext mhe_encrypt(const MhePublicKey& pk, int mu, Rng& rng);

/// Noiseless keyless ciphertext mu*G; key_id -1 matches any key.
MheCiphertext mhe_trivial(int mu, const MheParams& params, int key_id = -1);

int mhe_decrypt(const MheSecretKey& sk, const MheCiphertext& ct);

/// G - C0 * G^{-1}(C1); decrypts NAND(mu0, mu1).
MheCiphertext mhe_nand(const MheCiphertext& c0, const MheCiphertext& c1);

MheCiphertext mhe_add(const MheCiphertext& c0, const MheCiphertext& c1);
MheCiphertext mhe_sub(const MheCiphertext& c0, const MheCiphertext& c1);
/// C0 * G^{-1}(C1); decrypts mu0*mu1. Left noise scales by the column count.
MheCiphertext mhe_mul(const MheCiphertext& c0, const MheCiphertext& c1);
/// Plaintext-bit scaling (0 or 1).
MheCiphertext mhe_scale_bit(const MheCiphertext& ct, int bit);
/// XOR of the fresh operand into an accumulator: fresh + acc - 2*fresh*acc.
/// Noise: (2M+1)*fresh + 3*acc, M = (n'+1)log Q'.
MheCiphertext mhe_xor(const MheCiphertext& fresh, const MheCiphertext& acc);

/// k-th column from the right of the block whose gadget row is the key's
/// last coordinate: an LWE_{Q',2^k,n'} encryption with plaintext scale Q'/2^k.
lwe::LweCiphertext mhe_extract_lwe(const MheCiphertext& ct, u32 k);

/// MHE.Convert: extraction at the top scale Q'/2.
lwe::LweCiphertext mhe_convert(const MheCiphertext& ct);

/// The extraction key, as an LWE secret key over n' bits.
lwe::LweSecretKey mhe_extraction_key(const MheSecretKey& sk);

// ---- key switching (to a destination LWE key/modulus/dimension) ----

struct KeySwitchKey {
  // table[i][j] encrypts round(e_i * Q * 2^j / Q') as a raw phase offset.
  std::vector<std::vector<lwe::LweCiphertext>> table;
  lwe::LweParams dest;
  u64 src_Qp = 0;
  u32 src_np = 0;
  double err_fresh = 0.0;  // Err(LWE(sk))
};

KeySwitchKey make_keyswitch_key(const MheSecretKey& src, const MheParams& src_params,
                                const lwe::LweSecretKey& dest_key, const lwe::LweParams& dest,
                                Rng& rng);

/// (0, round(b Q/Q')) - sum a_{i,j} ksk[i][j]. With `truncated`, the terms
/// with 2^j < Q'/Q are dropped (the tightened log Q bound applies).
lwe::LweCiphertext key_switch(const lwe::LweCiphertext& ct, const KeySwitchKey& ksk,
                              bool truncated = false);

/// Worst-case output noise bound for a switch of a ciphertext with input noise err_m.
double key_switch_noise_bound(const KeySwitchKey& ksk, double err_m, bool truncated = false);

}  // namespace qboots::mhe

#endif
