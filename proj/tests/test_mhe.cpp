#include <doctest.h>

#include <cmath>

#include "qboots/mhe.hpp"

using namespace qboots;
using namespace qboots::mhe;

namespace {

MheParams toy_params() { return MheParams{u64(1) << 20, 2, 4, 0.0}; }

}  // namespace

TEST_CASE("keygen kernel identity: sk^T A' = 0 exactly") {
  MheParams p = toy_params();
  Rng rng = derive_rng(21, 0);
  MheKeyPair kp = mhe_keygen(p, rng);
  for (u32 c = 0; c < p.np; ++c) {
    u64 acc = 0;
    for (u32 r = 0; r < p.np; ++r)
      if (kp.sk.e[r]) acc = add_mod(acc, kp.pk.Aprime.at(r, c), p.Qp);
    CHECK(kp.pk.Aprime.at(p.np, c) == acc);
  }
}

TEST_CASE("encrypt/decrypt bits, trivial ciphertexts") {
  MheParams p = toy_params();
  Rng rng = derive_rng(22, 0);
  MheKeyPair kp = mhe_keygen(p, rng);
  for (int mu : {0, 1}) {
    CHECK(mhe_decrypt(kp.sk, mhe_encrypt(kp.pk, mu, rng)) == mu);
    MheCiphertext tv = mhe_trivial(mu, p);
    CHECK(mhe_decrypt(kp.sk, tv) == mu);
    CHECK(tv.noise == 0.0);
  }
}

TEST_CASE("NAND truth table") {
  MheParams p = toy_params();
  Rng rng = derive_rng(23, 0);
  MheKeyPair kp = mhe_keygen(p, rng);
  for (int a : {0, 1})
    for (int b : {0, 1}) {
      MheCiphertext ca = mhe_encrypt(kp.pk, a, rng);
      MheCiphertext cb = mhe_encrypt(kp.pk, b, rng);
      CHECK(mhe_decrypt(kp.sk, mhe_nand(ca, cb)) == (1 - a * b));
    }
}

TEST_CASE("add, mul, xor, scale decrypt correctly with the stated ledgers") {
  MheParams p = toy_params();
  Rng rng = derive_rng(24, 0);
  MheKeyPair kp = mhe_keygen(p, rng);
  double M = double(p.cols());
  for (int a : {0, 1})
    for (int b : {0, 1}) {
      MheCiphertext ca = mhe_encrypt(kp.pk, a, rng);
      MheCiphertext cb = mhe_encrypt(kp.pk, b, rng);

      MheCiphertext prod = mhe_mul(ca, cb);
      CHECK(mhe_decrypt(kp.sk, prod) == a * b);
      CHECK(prod.noise == doctest::Approx(M * ca.noise + cb.noise));

      MheCiphertext x = mhe_xor(ca, cb);
      CHECK(mhe_decrypt(kp.sk, x) == (a ^ b));
      CHECK(x.noise == doctest::Approx((2.0 * M + 1.0) * ca.noise + 3.0 * cb.noise));

      // Addition is mod-2 at the top extraction scale.
      CHECK(mhe_decrypt(kp.sk, mhe_add(mhe_trivial(a, p), cb)) == ((a + b) & 1));
      CHECK(mhe_decrypt(kp.sk, mhe_scale_bit(ca, 0)) == 0);
      CHECK(mhe_decrypt(kp.sk, mhe_scale_bit(ca, 1)) == a);
    }
}

TEST_CASE("extraction columns carry mu at every power-of-two scale") {
  MheParams p = toy_params();
  Rng rng = derive_rng(25, 0);
  MheKeyPair kp = mhe_keygen(p, rng);
  lwe::LweSecretKey ext = mhe_extraction_key(kp.sk);
  for (int mu : {0, 1}) {
    MheCiphertext ct = mhe_encrypt(kp.pk, mu, rng);
    // Decryption at scale Q'/2^k needs noise < Q'/2^{k+1}; the fresh ledger
    // here is 12, so stop well short of the bottom scale.
    for (u32 k = 1; k <= p.log_qp() - 6; ++k) {
      lwe::LweCiphertext e = mhe_extract_lwe(ct, k);
      CHECK(e.params.L == (u64(1) << k));
      CHECK(e.params.Q == p.Qp);
      CHECK(lwe::lwe_decrypt(ext, e) == u64(mu));
    }
    CHECK(lwe::lwe_decrypt(ext, mhe_convert(ct)) == u64(mu));
  }
}

TEST_CASE("key switch: roundtrip, noise audit, truncation, plaintext sweep") {
  MheParams src{u64(1) << 20, 8, 4, 0.0};
  lwe::LweParams dest{u64(1) << 16, 16, 4, 4};
  Rng rng = derive_rng(26, 0);
  MheKeyPair kp = mhe_keygen(src, rng);
  lwe::LweSecretKey dk = lwe::lwe_keygen(dest, rng);
  KeySwitchKey ksk = make_keyswitch_key(kp.sk, src, dk, dest, rng);

  lwe::LweSecretKey ext = mhe_extraction_key(kp.sk);
  lwe::LweParams srcp{src.Qp, 16, src.np, 4};
  for (bool truncated : {false, true}) {
    for (u64 m = 0; m < srcp.L; ++m) {
      lwe::LweCiphertext in = lwe::lwe_encrypt(ext, m, srcp, rng);
      lwe::LweCiphertext out = key_switch(in, ksk, truncated);
      CHECK(out.params.Q == dest.Q);
      CHECK(out.params.L == srcp.L);
      CHECK(u32(out.a.size()) == dest.n);
      CHECK(lwe::lwe_decrypt(dk, out) == m);

      i64 off = centered(
          sub_mod(lwe::lwe_phase(dk, out), mul_mod(m, out.params.scale(), dest.Q), dest.Q),
          dest.Q);
      CHECK(double(std::abs(off)) <= out.noise_bound);
      CHECK(out.noise_bound ==
            doctest::Approx(key_switch_noise_bound(ksk, in.noise_bound, truncated)));
    }
  }

  // Truncation tightens the bound (log Q versus log Q' table terms).
  CHECK(key_switch_noise_bound(ksk, 4.0, true) < key_switch_noise_bound(ksk, 4.0, false));
}

TEST_CASE("ciphertexts under different keys refuse to combine") {
  MheParams p = toy_params();
  Rng rng = derive_rng(27, 0);
  MheKeyPair k1 = mhe_keygen(p, rng, 1);
  MheKeyPair k2 = mhe_keygen(p, rng, 2);
  MheCiphertext c1 = mhe_encrypt(k1.pk, 1, rng);
  MheCiphertext c2 = mhe_encrypt(k2.pk, 1, rng);
  CHECK_THROWS(mhe_add(c1, c2));
  CHECK_THROWS(mhe_mul(c1, c2));
  // Trivial ciphertexts (key_id -1) combine with anything.
  CHECK(mhe_decrypt(k1.sk, mhe_add(c1, mhe_trivial(0, p))) == 1);
}
