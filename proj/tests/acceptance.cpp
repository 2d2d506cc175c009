// Acceptance gate: one line per criterion, "criterion N: PASS/FAIL - detail".
// A criterion known to be unattainable at these parameters reports
// "FAIL (expected)" with the reason and does not fail the binary; any other
// failure drives a nonzero exit code.

#include <algorithm>
#include <boost/math/distributions/chi_squared.hpp>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "qboots/bootstrap.hpp"
#include "qboots/paillier.hpp"
#include "qboots/pir/paillier_qpir.hpp"
#include "qboots/pir/qcpir.hpp"
#include "qboots/qfhe/paillier_cnot.hpp"
#include "qboots/resources.hpp"

using namespace qboots;

namespace {

int unexpected_failures = 0;

void report(int id, bool pass, bool expected_fail, const std::string& detail) {
  const char* verdict = pass ? "PASS" : (expected_fail ? "FAIL (expected)" : "FAIL");
  std::printf("criterion %d: %s - %s\n", id, verdict, detail.c_str());
  std::fflush(stdout);
  if (!pass && !expected_fail) ++unexpected_failures;
}

mhe::MheParams authority_params() {
  return mhe::MheParams{u64(1) << 48, 1, 2, double(u64(1) << 37)};
}

std::vector<mhe::MheCiphertext> encrypt_key(const lwe::LweSecretKey& key,
                                            qfhe::CrotAuthority& authority, Rng& rng) {
  std::vector<mhe::MheCiphertext> enc;
  for (auto bit : key.s) enc.push_back(authority.encrypt_bit(int(bit), rng));
  return enc;
}

u64 unmask_outcome(qfhe::CrotAuthority& authority, const blindrot::BlindRotationOutput& out) {
  u64 y = 0;
  for (std::size_t j = 0; j < out.c.size(); ++j)
    y = (y << 1) | (u64(out.c[j]) ^ u64(authority.decrypt_bit(out.enc_d1[j])));
  return y;
}

void chi_square_accumulate(const std::vector<u64>& hist, const std::vector<double>& law,
                           u64 shots, double* stat_out, int* dof_out) {
  double stat = 0.0;
  int dof = 0;
  double rare_e = 0.0;
  u64 rare_o = 0;
  for (std::size_t k = 0; k < hist.size(); ++k) {
    double e = law[k] * double(shots);
    if (e < 5.0) {
      rare_e += e;
      rare_o += hist[k];
      continue;
    }
    double d = double(hist[k]) - e;
    stat += d * d / e;
    ++dof;
  }
  if (rare_e > 1e-9) {
    double d = double(rare_o) - rare_e;
    stat += d * d / rare_e;
    ++dof;
  }
  *stat_out = stat;
  *dof_out = dof > 1 ? dof - 1 : 0;
}

double chi_square_p(double stat, int dof) {
  if (dof < 1) return 1.0;
  boost::math::chi_squared dist(dof);
  return 1.0 - boost::math::cdf(dist, stat);
}

// ---- criterion 1: toy-scale success bound + production-scale arithmetic ----

void criterion_1() {
  lwe::LweParams p{u64(1) << 20, 16, 16, 8};
  blindrot::BootstrapParams bp{u64(1) << 20, 16};
  double bound = blindrot::prop41_bound(p, bp);

  const u64 shots = 1000;
  u64 ok = 0;
  auto t0 = std::chrono::steady_clock::now();
  for (u64 s = 0; s < shots; ++s) {
    Rng rng = derive_rng(0xAC01, s);
    qfhe::CrotAuthority authority(authority_params(), 1, rng());
    lwe::LweSecretKey key = lwe::lwe_keygen(p, rng);
    auto enc_s = encrypt_key(key, authority, rng);
    u64 m = uniform_u64(rng, p.L);
    lwe::LweCiphertext ct = lwe::lwe_encrypt(key, m, p, rng);
    blindrot::BlindRotationOutput out = blindrot::blind_rotate(ct, enc_s, bp, authority, rng);
    if (unmask_outcome(authority, out) == m) ++ok;
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  double rate = double(ok) / double(shots);
  double sigma = std::sqrt(bound * (1.0 - bound) / double(shots));
  bool sim_ok = rate >= bound - 3.0 * sigma && secs < 60.0;

  // Production working point: the amplitude modulus divides the ciphertext
  // modulus exactly, so the mask-rescale rounding term vanishes and the
  // closed-form success bound needs only the fresh-noise term.
  double Lp = double(u64(1) << 14), B = 64.0, Q = double(u64(1) << 29);
  double term = Lp * B / Q;
  double pi4 = M_PI * M_PI * M_PI * M_PI;
  double prod_bound = 1.0 - term * term * term * term * pi4 / 3.0;
  bool prod_ok = prod_bound > 1.0 - std::ldexp(1.0, -30);

  char buf[256];
  std::snprintf(buf, sizeof buf,
                "%llu/%llu toy rotations (bound 1-%.2e, %.1fs); production bound 1-%.2e > 1-2^-30 %s",
                (unsigned long long)ok, (unsigned long long)shots, 1.0 - bound, secs,
                1.0 - prod_bound, prod_ok ? "yes" : "no");
  report(1, sim_ok && prod_ok, false, buf);
}

// ---- criterion 2: compressed-readout frequency floor ----

void criterion_2() {
  lwe::LweParams p{u64(1) << 20, 64, 16, 0};
  blindrot::BootstrapParams bp{u64(1) << 20, 8};
  const double floor = blindrot::prop42_bound();
  const u64 shots = 10000;
  double sigma = std::sqrt(floor * (1.0 - floor) / double(shots));
  double threshold = floor - 3.0 * sigma;

  auto t0 = std::chrono::steady_clock::now();
  Rng pick = derive_rng(0xAC02, 0);
  u64 worst_num = shots;
  bool all_ok = true;
  for (int i = 0; i < 20; ++i) {
    u64 m = uniform_u64(pick, p.L);
    Rng rng = derive_rng(0xAC02, 1 + i);
    qfhe::CrotAuthority authority(authority_params(), 1, rng());
    lwe::LweSecretKey key = lwe::lwe_keygen(p, rng);
    auto enc_s = encrypt_key(key, authority, rng);
    lwe::LweCiphertext ct = lwe::lwe_encrypt(key, m, p, rng);

    blindrot::BlindRotationRun run = blindrot::blind_rotate_state(ct, enc_s, bp, authority, rng);
    std::vector<int> d1;
    for (const auto& cx : run.ms.enc_x) d1.push_back(authority.decrypt_bit(cx));
    u64 target = mod_q(round_half_up(m * bp.L_prime, p.L), bp.L_prime);
    u64 hits = 0;
    for (u64 s = 0; s < shots; ++s) {
      blindrot::BlindRotationOutput out = blindrot::measure_run(run, rng);
      u64 y = 0;
      for (std::size_t j = 0; j < out.c.size(); ++j)
        y = (y << 1) | (u64(out.c[j]) ^ u64(d1[j]));
      if (y == target) ++hits;
    }
    worst_num = std::min(worst_num, hits);
    if (double(hits) / double(shots) < threshold) all_ok = false;
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  char buf[256];
  std::snprintf(buf, sizeof buf,
                "20 m values x %llu shots, worst frequency %.4f >= %.4f (floor %.4f, %.1fs)",
                (unsigned long long)shots, double(worst_num) / double(shots), threshold, floor,
                secs);
  report(2, all_ok && secs < 120.0, false, buf);
}

// ---- criterion 3: simulated outcomes vs the closed-form law ----

void criterion_3() {
  struct Point {
    u64 L_prime;
    u64 m;
    i64 e;
  };
  // Error offsets chosen to spread the outcome law across several cells.
  std::vector<Point> points{
      {4, 1, 96},  {4, 3, 160}, {8, 2, 48},  {8, 5, 56},   {8, 9, 24},
      {16, 0, 28}, {16, 7, 20}, {16, 11, 12}, {16, 14, 26}, {8, 12, 40},
  };
  lwe::LweParams p{1024, 16, 4, 2};
  const u64 shots = 4000;

  double min_p = 1.0;
  double pooled_stat = 0.0;
  int pooled_dof = 0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const Point& pt = points[i];
    blindrot::BootstrapParams bp{1024, pt.L_prime};
    Rng rng = derive_rng(0xAC03, i);
    qfhe::CrotAuthority authority(authority_params(), 1, rng());
    lwe::LweSecretKey key = lwe::lwe_keygen(p, rng);
    auto enc_s = encrypt_key(key, authority, rng);
    lwe::LweCiphertext ct = lwe::lwe_encrypt_with_error(key, pt.m, pt.e, p, rng);

    blindrot::BlindRotationRun run = blindrot::blind_rotate_state(ct, enc_s, bp, authority, rng);
    std::vector<int> d1;
    for (const auto& cx : run.ms.enc_x) d1.push_back(authority.decrypt_bit(cx));

    // Exact post-rescale phase for the law.
    std::vector<u64> ap = blindrot::rescale_mask(ct.a, p.Q, bp.N_star);
    u64 acc = mod_q(round_half_up(ct.b * bp.N_star, p.Q), bp.N_star);
    for (std::size_t k = 0; k < ap.size(); ++k)
      if (key.s[k]) acc = sub_mod(acc, ap[k], bp.N_star);
    auto law = blindrot::outcome_distribution(double(acc) / double(bp.N_star), bp.L_prime);

    std::vector<u64> hist(bp.L_prime, 0);
    for (u64 s = 0; s < shots; ++s) {
      blindrot::BlindRotationOutput out = blindrot::measure_run(run, rng);
      u64 y = 0;
      for (std::size_t j = 0; j < out.c.size(); ++j)
        y = (y << 1) | (u64(out.c[j]) ^ u64(d1[j]));
      ++hist[y];
    }
    double stat = 0.0;
    int dof = 0;
    chi_square_accumulate(hist, law, shots, &stat, &dof);
    min_p = std::min(min_p, chi_square_p(stat, dof));
    pooled_stat += stat;
    pooled_dof += dof;
  }

  // Statistics add across independent points; the family-wise verdict is one
  // pooled chi-square test.
  double pooled_p = chi_square_p(pooled_stat, pooled_dof);
  char buf[200];
  std::snprintf(buf, sizeof buf,
                "10 parameter points x %llu shots, pooled chi-square p = %.3f "
                "(worst single point %.3f)",
                (unsigned long long)shots, pooled_p, min_p);
  report(3, pooled_p > 0.01, false, buf);
}

// ---- criterion 4: refresh pipeline noise contract ----

void criterion_4() {
  lwe::LweParams p{u64(1) << 20, 16, 16, 8};
  blindrot::BootstrapParams bp{u64(1) << 20, 16};
  const u64 shots = 1000;
  i64 big = i64(0.9 * p.decrypt_margin());

  u64 noise_ok = 0, rot_ok = 0, preserved = 0;
  for (u64 s = 0; s < shots; ++s) {
    Rng rng = derive_rng(0xAC04, s);
    qfhe::CrotAuthority authority(authority_params(), 1, rng());
    lwe::LweSecretKey key = lwe::lwe_keygen(p, rng);
    bootstrap::BootstrapKeys keys = bootstrap::make_bootstrap_keys(key, p, authority, rng);
    u64 m = uniform_u64(rng, p.L);
    i64 e = (s & 1) ? big : -big;
    lwe::LweCiphertext noisy = lwe::lwe_encrypt_with_error(key, m, e, p, rng);

    blindrot::BlindRotationOutput rot = blindrot::blind_rotate(noisy, keys.enc_s, bp, authority, rng);
    u64 y = unmask_outcome(authority, rot);
    lwe::LweCiphertext combined = bootstrap::combine_to_lwe(rot.c, rot.enc_d1);
    lwe::LweCiphertext out = mhe::key_switch(combined, keys.ksk);
    bootstrap::NoiseReport nr = bootstrap::noise_report(keys.ksk, combined.noise_bound);

    u64 dec = lwe::lwe_decrypt(key, out);
    i64 err = centered(sub_mod(lwe::lwe_phase(key, out), mul_mod(dec, p.scale(), p.Q), p.Q), p.Q);
    if (double(std::abs(err)) <= nr.b_f) ++noise_ok;
    if (y == m) {
      ++rot_ok;
      if (dec == m) ++preserved;
    }
  }

  bool pass = noise_ok == shots && preserved == rot_ok;
  char buf[200];
  std::snprintf(buf, sizeof buf,
                "noise within B_f %llu/%llu; plaintext preserved %llu/%llu rotation successes",
                (unsigned long long)noise_ok, (unsigned long long)shots,
                (unsigned long long)preserved, (unsigned long long)rot_ok);
  report(4, pass, false, buf);
}

// ---- criterion 5: functional bootstrapping truth tables ----

void criterion_5() {
  lwe::LweParams p{u64(1) << 20, 16, 16, 8};
  blindrot::BootstrapParams bp{u64(1) << 20, 16};
  Rng tab_rng = derive_rng(0xAC05, 999);

  std::vector<std::pair<std::string, bootstrap::TestFunction>> funcs;
  {
    std::vector<u64> ident(16), msb(16), square(16), random(16);
    for (u64 m = 0; m < 16; ++m) {
      ident[m] = m;
      msb[m] = m >> 3;
      square[m] = (m * m) % 16;
      random[m] = uniform_u64(tab_rng, 16);
    }
    funcs.emplace_back("identity", bootstrap::table_function(16, 16, ident));
    funcs.emplace_back("msb", bootstrap::table_function(16, 2, msb));
    funcs.emplace_back("square", bootstrap::table_function(16, 16, square));
    funcs.emplace_back("random", bootstrap::table_function(16, 16, random));
  }

  u64 correct = 0, total = 0;
  bool agree = true;
  for (auto& [name, tf] : funcs) {
    u32 lt = static_cast<u32>(log2_exact(tf.L_tilde));
    tf.circuit = bootstrap::synthesize_function_circuit(tf.f_tilde_table(bp.L_prime), lt);
    for (u64 m = 0; m < 16; ++m) {
      u64 dec[2] = {0, 0};
      int slot = 0;
      for (bootstrap::FbStrategy st :
           {bootstrap::FbStrategy::qram, bootstrap::FbStrategy::computed}) {
        Rng rng = derive_rng(0xAC06, total * 4 + u64(slot));
        qfhe::CrotAuthority authority(authority_params(), 1, rng());
        lwe::LweSecretKey key = lwe::lwe_keygen(p, rng);
        auto enc_s = encrypt_key(key, authority, rng);
        lwe::LweCiphertext ct = lwe::lwe_encrypt(key, m, p, rng);
        bootstrap::FunctionalResult res =
            bootstrap::functional_bootstrap(ct, tf, bp, enc_s, authority, st, rng);
        lwe::LweSecretKey ext = mhe::mhe_extraction_key(authority.secret_key_for_tests());
        dec[slot] = lwe::lwe_decrypt(ext, res.ct);
        ++slot;
      }
      ++total;
      if (dec[0] == tf.f(m) && dec[1] == tf.f(m)) ++correct;
      if (dec[0] != dec[1]) agree = false;
    }
  }

  char buf[160];
  std::snprintf(buf, sizeof buf,
                "4 functions x 16 inputs: %llu/%llu correct under both strategies, strategies %s",
                (unsigned long long)correct, (unsigned long long)total,
                agree ? "agree" : "DISAGREE");
  report(5, correct == total && agree, false, buf);
}

// ---- criterion 6: Paillier encrypted-CNOT fidelity ----

qsim::QuantumState random_pair_state(Rng& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  qsim::AmpMap amps;
  for (u32 a = 0; a < 2; ++a)
    for (u32 b = 0; b < 2; ++b) amps[{a, b}] = qsim::cplx(u(rng), u(rng));
  return qsim::QuantumState(qfhe::cnot_pair_layout(), std::move(amps), true);
}

bool marginal_independent(const paillier::PaillierKeyPair& kp, Rng& rng) {
  qsim::QuantumState psi = random_pair_state(rng);
  std::vector<std::vector<double>> marg;
  for (u64 s0 : {u64(0), u64(1)}) {
    u64 c_s0 = paillier::paillier_encrypt(kp.pk, s0, rng);
    qsim::QuantumState full = qfhe::cnot_premeasure_state(c_s0, psi, kp.pk.params);
    u32 g = full.layout().size() - 1;
    std::vector<double> m(kp.pk.params.N2, 0.0);
    for (const auto& [idx, amp] : full.amps()) m[idx[g]] += std::norm(amp);
    marg.push_back(std::move(m));
  }
  // The two marginals are permutations of the same multiset of weights;
  // sorted comparison is the enumeration-exact independence check.
  std::sort(marg[0].begin(), marg[0].end());
  std::sort(marg[1].begin(), marg[1].end());
  for (std::size_t i = 0; i < marg[0].size(); ++i)
    if (std::abs(marg[0][i] - marg[1][i]) > 1e-12) return false;
  return true;
}

void criterion_6() {
  Rng rng = derive_rng(0xAC07, 0);

  // N = 15 leg: bijective modulus, corrections well-defined.
  paillier::PaillierKeyPair kp15 = paillier::paillier_keygen_toy(15);
  u64 ok15 = 0, total15 = 0;
  double worst = 1.0;
  for (u64 s0 : {u64(0), u64(1)})
    for (int t = 0; t < 20; ++t) {
      qsim::QuantumState psi = random_pair_state(rng);
      u64 c_s0 = paillier::paillier_encrypt(kp15.pk, s0, rng);
      qfhe::EncryptedCnotResult res = qfhe::paillier_encrypted_cnot(c_s0, psi, kp15, rng());
      qfhe::CnotPreimages pre = qfhe::cnot_preimages(kp15.pk.params, c_s0, res.ct_m0r0);
      qsim::QuantumState want = psi;
      if (s0) want.cnot(0, 1);
      double f = pre.unique()
                     ? qsim::fidelity(qfhe::corrected_cnot_output(res, pre, kp15.pk.params.bits),
                                      want)
                     : 0.0;
      worst = std::min(worst, f);
      ++total15;
      if (f >= 1.0 - 1e-9) ++ok15;
    }
  bool marg15 = marginal_independent(kp15, rng);

  // N = 21 leg: gcd(N, phi(N)) = 3, encryption is 3-to-1, the measured
  // register never determines a unique preimage pair, so no Pauli correction
  // reproduces CNOT^{s0}; the fidelity target is unattainable by enumeration.
  paillier::PaillierKeyPair kp21 = paillier::paillier_keygen_toy(21);
  u64 unique21 = 0;
  for (u64 s0 : {u64(0), u64(1)})
    for (int t = 0; t < 20; ++t) {
      qsim::QuantumState psi = random_pair_state(rng);
      u64 c_s0 = paillier::paillier_encrypt(kp21.pk, s0, rng);
      qfhe::EncryptedCnotResult res = qfhe::paillier_encrypted_cnot(c_s0, psi, kp21, rng());
      if (qfhe::cnot_preimages(kp21.pk.params, c_s0, res.ct_m0r0).unique()) ++unique21;
    }
  bool marg21 = marginal_independent(kp21, rng);

  bool n15_pass = ok15 == total15 && marg15;
  char buf[300];
  std::snprintf(buf, sizeof buf,
                "N=15: %llu/%llu fidelity >= 1-1e-9 (worst %.16f), marginal independent %s; "
                "N=21 unattainable: degenerate modulus, %llu/40 unique preimages, "
                "marginal independent %s",
                (unsigned long long)ok15, (unsigned long long)total15, worst,
                marg15 ? "yes" : "no", (unsigned long long)unique21, marg21 ? "yes" : "no");
  // The N=21 fidelity leg is expected-unattainable; the criterion is reported
  // red but only fails the gate if the N=15 leg or the marginals break.
  report(6, false, n15_pass && unique21 == 0 && marg21, buf);
}

// ---- criterion 7: single-round retrieval sweep ----

void criterion_7() {
  u64 ok = 0, total = 0, decrypts = 0;
  bool rounds_ok = true;
  for (u64 N : {u64(4), u64(8), u64(16), u64(64)})
    for (u32 w : {1u, 4u}) {
      Rng db_rng = derive_rng(0xAC08, N * 10 + w);
      pir::Database db = pir::random_database(N, w, db_rng);
      for (u64 i = 0; i < N; ++i) {
        Rng rng = derive_rng(0xAC09, total);
        qfhe::CrotAuthority authority(authority_params(), 1, rng());
        pir::QcpirResult res = pir::qcpir_run(db, i, authority, rng);
        ++total;
        if (res.word == db.entries[i]) ++ok;
        decrypts += res.audit.decrypt_events;
        if (res.transcript.rounds() != 1) rounds_ok = false;
      }
    }
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "%llu/%llu reconstructions over N in {4,8,16,64} x width {1,4}; "
                "server decrypt events %llu; 1 round each %s",
                (unsigned long long)ok, (unsigned long long)total, (unsigned long long)decrypts,
                rounds_ok ? "yes" : "no");
  report(7, ok == total && decrypts == 0 && rounds_ok, false, buf);
}

// ---- criterion 8: conversion-based retrieval ----

void criterion_8() {
  Rng db_rng = derive_rng(0xAC0A, 0);
  pir::Database db = pir::random_database(4, 3, db_rng);
  paillier::PaillierKeyPair pkeys = paillier::paillier_keygen_toy(15);

  u64 ok = 0;
  std::set<u64> round_counts;
  bool matches_toffolis = true;
  for (u64 i = 0; i < db.size(); ++i) {
    Rng rng = derive_rng(0xAC0B, i);
    qfhe::CrotAuthority authority(authority_params(), 1, rng());
    pir::PaillierQpirResult res = pir::paillier_qpir_run(db, i, authority, pkeys, rng);
    if (res.word == db.entries[i]) ++ok;
    round_counts.insert(res.conversion_rounds);
    if (res.conversion_rounds != res.circuit_toffolis) matches_toffolis = false;
  }
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "%llu/4 indices correct; conversion rounds == circuit Toffolis %s; "
                "identical across indices %s",
                (unsigned long long)ok, matches_toffolis ? "yes" : "no",
                round_counts.size() == 1 ? "yes" : "no");
  report(8, ok == 4 && matches_toffolis && round_counts.size() == 1, false, buf);
}

// ---- criterion 9: resource arithmetic ----

void criterion_9() {
  u64 lattice = resources::lwe_cnot_qubits(1024, 31);
  u64 phe = resources::paillier_cnot_qubits(4096);
  bool pass = lattice == 1047583 && phe == 12288;
  char buf[120];
  std::snprintf(buf, sizeof buf, "lattice pair count %llu (want 1047583), Paillier %llu (want 12288)",
                (unsigned long long)lattice, (unsigned long long)phe);
  report(9, pass, false, buf);
}

// ---- criterion 10: exhaustive toy-scale property suites ----

void criterion_10() {
  std::vector<std::string> failures;
  Rng rng = derive_rng(0xAC0C, 0);

  {  // Paillier bijectivity for N = 15.
    paillier::PaillierKeyPair kp = paillier::paillier_keygen_toy(15);
    std::set<u64> seen;
    bool ok = true;
    for (u64 m = 0; m < 15 && ok; ++m)
      for (u64 r = 1; r < 15; ++r) {
        if (paillier::gcd_u64(r, 15) != 1) continue;
        u64 ct = paillier::paillier_encrypt(kp.pk, m, r);
        if (!seen.insert(ct).second || paillier::paillier_decrypt(kp.sk, ct) != m) {
          ok = false;
          break;
        }
      }
    if (!ok || seen.size() != 120) failures.push_back("paillier-bijectivity");
  }

  {  // Pauli-OTP key average = I/2.
    qsim::RegisterLayout one{{{"q", 2}}};
    qsim::AmpMap amps;
    amps[{0}] = qsim::cplx(0.28, -0.43);
    amps[{1}] = qsim::cplx(0.61, 0.52);
    qsim::QuantumState psi(one, amps, true);
    qsim::cplx rho[2][2] = {{0, 0}, {0, 0}};
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) {
        qsim::QuantumState enc = psi;
        enc.pauli_otp_encrypt({0}, {a}, {b});
        qsim::cplx v0 = enc.amp({0}), v1 = enc.amp({1});
        rho[0][0] += 0.25 * v0 * std::conj(v0);
        rho[0][1] += 0.25 * v0 * std::conj(v1);
        rho[1][0] += 0.25 * v1 * std::conj(v0);
        rho[1][1] += 0.25 * v1 * std::conj(v1);
      }
    if (std::abs(rho[0][0] - qsim::cplx(0.5, 0)) > 1e-12 ||
        std::abs(rho[1][1] - qsim::cplx(0.5, 0)) > 1e-12 || std::abs(rho[0][1]) > 1e-12 ||
        std::abs(rho[1][0]) > 1e-12)
      failures.push_back("otp-average");
  }

  {  // Matrix-scheme NAND truth table.
    mhe::MheParams p{u64(1) << 20, 2, 4, 0.0};
    mhe::MheKeyPair kp = mhe::mhe_keygen(p, rng);
    for (int a : {0, 1})
      for (int b : {0, 1}) {
        auto ca = mhe::mhe_encrypt(kp.pk, a, rng);
        auto cb = mhe::mhe_encrypt(kp.pk, b, rng);
        if (mhe::mhe_decrypt(kp.sk, mhe::mhe_nand(ca, cb)) != 1 - a * b)
          failures.push_back("gsw-nand");
      }
  }

  {  // Recombination XOR identity over all bit pairs.
    mhe::MheParams p = authority_params();
    mhe::MheKeyPair kp = mhe::mhe_keygen(p, rng);
    lwe::LweSecretKey ext = mhe::mhe_extraction_key(kp.sk);
    for (int c0 : {0, 1})
      for (int c1 : {0, 1})
        for (int d0 : {0, 1})
          for (int d1 : {0, 1}) {
            std::vector<mhe::MheCiphertext> enc_d{mhe::mhe_encrypt(kp.pk, d0, rng),
                                                  mhe::mhe_encrypt(kp.pk, d1, rng)};
            lwe::LweCiphertext out = bootstrap::combine_to_lwe({c0, c1}, enc_d);
            if (lwe::lwe_decrypt(ext, out) != u64((c0 ^ d0) << 1 | (c1 ^ d1)))
              failures.push_back("combine-xor");
          }
  }

  {  // Memory circuit vs direct table unitary, N <= 16.
    for (u64 N : {u64(2), u64(4), u64(8), u64(16)}) {
      std::vector<u64> db(N);
      for (auto& wv : db) wv = rng() & 7;
      for (u32 budget : {1u, u32(N)}) {
        qsim::QramLayout ql;
        qsim::Circuit c = qsim::build_qram_circuit(db, 3, budget, &ql);
        for (u64 i = 0; i < N; ++i) {
          qsim::BasisIndex idx(c.layout.size(), 0);
          for (u32 t = 0; t < ql.index_bits; ++t)
            idx[ql.index_slots[t]] = u32(i >> (ql.index_bits - 1 - t)) & 1;
          qsim::QuantumState got(c.layout, idx);
          c.apply(got);
          qsim::QuantumState want(c.layout, idx);
          want.apply_db_unitary(ql.index_slots, ql.data_slots, db);
          if (!qsim::approx_equal(got, want, 1e-9)) {
            failures.push_back("memory-circuit");
            break;
          }
        }
      }
    }
  }

  {  // Key-switch plaintext invariance over the whole plaintext space.
    mhe::MheParams src{u64(1) << 20, 8, 4, 0.0};
    lwe::LweParams dest{u64(1) << 16, 16, 4, 4};
    mhe::MheKeyPair kp = mhe::mhe_keygen(src, rng);
    lwe::LweSecretKey dk = lwe::lwe_keygen(dest, rng);
    mhe::KeySwitchKey ksk = mhe::make_keyswitch_key(kp.sk, src, dk, dest, rng);
    lwe::LweSecretKey ext = mhe::mhe_extraction_key(kp.sk);
    lwe::LweParams srcp{src.Qp, 16, src.np, 4};
    for (u64 m = 0; m < srcp.L; ++m) {
      lwe::LweCiphertext in = lwe::lwe_encrypt(ext, m, srcp, rng);
      if (lwe::lwe_decrypt(dk, mhe::key_switch(in, ksk)) != m)
        failures.push_back("keyswitch-invariance");
    }
  }

  std::string detail = "bijectivity, OTP average, NAND, XOR recombination, memory circuit, "
                       "key switch all exhaustive";
  if (!failures.empty()) {
    detail = "failed:";
    for (const auto& f : failures) detail += " " + f;
  }
  report(10, failures.empty(), false, detail);
}

}  // namespace

int main() {
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_10();
  if (unexpected_failures) {
    std::printf("acceptance: %d unexpected failure(s)\n", unexpected_failures);
    return 1;
  }
  std::printf("acceptance: all criteria at expected status\n");
  return 0;
}
