#include <doctest.h>

#include <cmath>
#include <complex>

#include "qboots/qsim/state.hpp"

using namespace qboots;
using namespace qboots::qsim;

namespace {

RegisterLayout qubits(u32 n) {
  RegisterLayout l;
  for (u32 i = 0; i < n; ++i) l.slots.push_back({"q" + std::to_string(i), 2});
  return l;
}

bool close(cplx a, cplx b, double eps = 1e-12) { return std::abs(a - b) < eps; }

}  // namespace

TEST_CASE("single-qubit gate matrices on basis states") {
  QuantumState s(qubits(1), BasisIndex{0});
  s.h(0);
  CHECK(close(s.amp({0}), cplx(M_SQRT1_2, 0)));
  CHECK(close(s.amp({1}), cplx(M_SQRT1_2, 0)));
  s.z(0);
  CHECK(close(s.amp({1}), cplx(-M_SQRT1_2, 0)));
  s.h(0);
  CHECK(close(s.amp({1}), cplx(1, 0)));  // HZH = X

  QuantumState t(qubits(1), BasisIndex{1});
  t.t(0);
  CHECK(close(t.amp({1}), std::exp(cplx(0, M_PI / 4))));
  t.p(0);
  CHECK(close(t.amp({1}), std::exp(cplx(0, 3 * M_PI / 4))));
  t.r_alpha(0, 0.125);
  CHECK(close(t.amp({1}), std::exp(cplx(0, M_PI))));

  QuantumState y(qubits(1), BasisIndex{0});
  y.y(0);
  CHECK(close(y.amp({1}), cplx(0, 1)));
}

TEST_CASE("controlled gates: CNOT, Toffoli, CSWAP truth tables") {
  for (u32 a = 0; a < 2; ++a)
    for (u32 b = 0; b < 2; ++b) {
      QuantumState s(qubits(2), BasisIndex{a, b});
      s.cnot(0, 1);
      CHECK(close(s.amp({a, b ^ a}), cplx(1, 0)));
    }
  for (u32 x = 0; x < 8; ++x) {
    u32 a = x >> 2 & 1, b = x >> 1 & 1, c = x & 1;
    QuantumState s(qubits(3), BasisIndex{a, b, c});
    s.toffoli(0, 1, 2);
    CHECK(close(s.amp({a, b, c ^ (a & b)}), cplx(1, 0)));

    QuantumState w(qubits(3), BasisIndex{a, b, c});
    w.cswap(0, 1, 2);
    if (a) CHECK(close(w.amp({a, c, b}), cplx(1, 0)));
    else CHECK(close(w.amp({a, b, c}), cplx(1, 0)));
  }
}

TEST_CASE("QFT kernel and inverse") {
  const u32 n = 3, D = 8;
  for (u32 x = 0; x < D; ++x) {
    QuantumState s(qubits(n), BasisIndex{x >> 2 & 1, x >> 1 & 1, x & 1});
    s.qft({0, 1, 2});
    for (u32 y = 0; y < D; ++y) {
      cplx expect = std::exp(cplx(0, 2 * M_PI * double(x * y) / D)) / std::sqrt(double(D));
      CHECK(close(s.amp({y >> 2 & 1, y >> 1 & 1, y & 1}), expect));
    }
    s.qft({0, 1, 2}, true);
    CHECK(close(s.amp({x >> 2 & 1, x >> 1 & 1, x & 1}), cplx(1, 0)));
  }
}

TEST_CASE("measurement collapses and correlates a Bell pair") {
  Rng rng = derive_rng(41, 0);
  int ones = 0;
  for (int trial = 0; trial < 200; ++trial) {
    QuantumState s(qubits(2), BasisIndex{0, 0});
    s.h(0);
    s.cnot(0, 1);
    auto out = s.measure({0, 1}, rng);
    CHECK(out[0] == out[1]);
    CHECK(close(s.amp({out[0], out[1]}), cplx(1, 0), 1e-9));
    ones += int(out[0]);
  }
  CHECK(ones > 50);
  CHECK(ones < 150);
}

TEST_CASE("pauli OTP roundtrips and key-averages to the maximally mixed state") {
  AmpMap amps;
  amps[{0}] = cplx(0.6, 0.0);
  amps[{1}] = cplx(0.0, 0.8);
  QuantumState psi(qubits(1), amps);

  cplx rho[2][2] = {{0, 0}, {0, 0}};
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      QuantumState enc = psi;
      enc.pauli_otp_encrypt({0}, {a}, {b});
      cplx v0 = enc.amp({0}), v1 = enc.amp({1});
      rho[0][0] += 0.25 * v0 * std::conj(v0);
      rho[0][1] += 0.25 * v0 * std::conj(v1);
      rho[1][0] += 0.25 * v1 * std::conj(v0);
      rho[1][1] += 0.25 * v1 * std::conj(v1);

      enc.pauli_otp_decrypt({0}, {a}, {b});
      CHECK(fidelity(enc, psi) == doctest::Approx(1.0).epsilon(1e-12));
    }
  CHECK(std::abs(rho[0][0] - cplx(0.5, 0)) < 1e-12);
  CHECK(std::abs(rho[1][1] - cplx(0.5, 0)) < 1e-12);
  CHECK(std::abs(rho[0][1]) < 1e-12);
  CHECK(std::abs(rho[1][0]) < 1e-12);
}

TEST_CASE("database unitary writes DB_i under each index") {
  std::vector<u64> db{5, 0, 7, 2};
  for (u32 i = 0; i < 4; ++i) {
    QuantumState s(qubits(5), BasisIndex{i >> 1 & 1, i & 1, 0, 0, 0});
    s.apply_db_unitary({0, 1}, {2, 3, 4}, db);
    u64 w = db[i];
    CHECK(close(s.amp({i >> 1 & 1, i & 1, u32(w >> 2 & 1), u32(w >> 1 & 1), u32(w & 1)}),
                cplx(1, 0)));
  }
}

TEST_CASE("basis maps permute one slot under exact controls") {
  RegisterLayout layout{{{"c", 2}, {"g", 9}}};
  QuantumState s(layout, BasisIndex{1, 4});
  s.apply_basis_map(1, [](u32 v) { return (v + 3) % 9; }, {{0, 1}});
  CHECK(close(s.amp({1, 7}), cplx(1, 0)));
  s.apply_basis_map(1, [](u32 v) { return (v + 3) % 9; }, {{0, 0}});
  CHECK(close(s.amp({1, 7}), cplx(1, 0)));  // control not satisfied
}

TEST_CASE("fidelity ignores global phase") {
  QuantumState a(qubits(1), BasisIndex{0});
  a.h(0);
  QuantumState b = a;
  b.z(0);
  b.x(0);
  b.z(0);
  b.x(0);  // (ZX)^2 = -I
  CHECK(approx_equal(a, b));
}
