#include <doctest.h>

#include <set>

#include "qboots/paillier.hpp"

using namespace qboots;
using namespace qboots::paillier;

TEST_CASE("N=15 encryption is a bijection onto the units of Z_{N^2}") {
  PaillierKeyPair kp = paillier_keygen_toy(15);
  CHECK_FALSE(kp.sk.degenerate);
  std::set<u64> seen;
  for (u64 m = 0; m < 15; ++m)
    for (u64 r = 1; r < 15; ++r) {
      if (gcd_u64(r, 15) != 1) continue;
      u64 ct = paillier_encrypt(kp.pk, m, r);
      CHECK(gcd_u64(ct, kp.pk.params.N2) == 1);
      CHECK(seen.insert(ct).second);
      CHECK(paillier_decrypt(kp.sk, ct) == m);
      CHECK(paillier_recover_randomness(kp.sk, ct, m) == r);
    }
  // |Z_N| * |Z_N^*| = 15 * 8 = phi(N^2)
  CHECK(seen.size() == 120);
}

TEST_CASE("homomorphic addition, plain multiples, negation") {
  PaillierKeyPair kp = paillier_keygen_toy(33);
  Rng rng = derive_rng(31, 0);
  for (u64 a : {u64(0), u64(5), u64(17)})
    for (u64 b : {u64(1), u64(12), u64(32)}) {
      u64 ca = paillier_encrypt(kp.pk, a, rng);
      u64 cb = paillier_encrypt(kp.pk, b, rng);
      CHECK(paillier_decrypt(kp.sk, paillier_add(kp.pk, ca, cb)) == (a + b) % 33);
      CHECK(paillier_decrypt(kp.sk, paillier_plain_mult(kp.pk, ca, 7)) == (7 * a) % 33);
      CHECK(paillier_decrypt(kp.sk, paillier_ct_inverse(kp.pk, ca)) == (33 - a) % 33);
    }
}

TEST_CASE("xor gadget: Enc(m) -> Enc(m xor s0) exhaustively") {
  PaillierKeyPair kp = paillier_keygen_toy(15);
  Rng rng = derive_rng(32, 0);
  for (u64 s0 : {u64(0), u64(1)}) {
    u64 c_s0 = paillier_encrypt(kp.pk, s0, rng);
    PhexorGadget gadget = make_xor_gadget(kp.pk, c_s0);
    for (u64 m : {u64(0), u64(1)})
      for (u64 r = 1; r < 15; ++r) {
        if (gcd_u64(r, 15) != 1) continue;
        u64 cm = paillier_encrypt(kp.pk, m, r);
        u64 cx = phe_xor_with_plain_bit(kp.pk, gadget, cm, m);
        CHECK(paillier_decrypt(kp.sk, cx) == (m ^ s0));
      }
  }
}

TEST_CASE("bit-preimage oracle is exact for a bijective modulus") {
  PaillierKeyPair kp = paillier_keygen_toy(35);
  Rng rng = derive_rng(33, 0);
  for (int trial = 0; trial < 20; ++trial) {
    u64 m = rng() & 1;
    u64 r = sample_unit(kp.pk.params, rng);
    u64 ct = paillier_encrypt(kp.pk, m, r);
    auto pre = paillier_bit_preimages(kp.pk.params, ct);
    REQUIRE(pre.size() == 1);
    CHECK(pre[0].first == m);
    CHECK(pre[0].second == r);
  }
}

TEST_CASE("N=21 is degenerate: 3-to-1 encryption, decryption refused") {
  // gcd(N, phi(N)) = gcd(21, 12) = 3: r -> r^N is 3-to-1 on the units.
  PaillierKeyPair kp = paillier_keygen_unchecked(3, 7);
  CHECK(kp.sk.degenerate);
  CHECK_THROWS(paillier_decrypt(kp.sk, paillier_encrypt(kp.pk, 0, u64(2))));
  CHECK_THROWS(paillier_recover_randomness(kp.sk, paillier_encrypt(kp.pk, 0, u64(2)), 0));

  Rng rng = derive_rng(34, 0);
  for (int trial = 0; trial < 10; ++trial) {
    u64 m = rng() & 1;
    u64 ct = paillier_encrypt(kp.pk, m, rng);
    auto pre = paillier_bit_preimages(kp.pk.params, ct);
    CHECK(pre.size() > 1);
  }
}

TEST_CASE("toy keygen whitelist") {
  for (u64 N : {u64(15), u64(33), u64(35)}) {
    PaillierKeyPair kp = paillier_keygen_toy(N);
    CHECK(kp.pk.params.N == N);
    CHECK(kp.pk.params.N2 == N * N);
    CHECK_FALSE(kp.sk.degenerate);
  }
  CHECK(paillier_keygen_toy(21).sk.degenerate);
  CHECK_THROWS(paillier_keygen_toy(77));
  CHECK_THROWS(paillier_keygen(3, 7));
}
