#include "qboots/qsim/state.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace qboots::qsim {

u32 RegisterLayout::find(const std::string& name) const {
  for (u32 i = 0; i < slots.size(); ++i)
    if (slots[i].name == name) return i;
  throw std::invalid_argument("RegisterLayout: no slot named " + name);
}

void RegisterLayout::validate() const {
  for (u32 i = 0; i < slots.size(); ++i) {
    if (slots[i].radix < 2) throw std::invalid_argument("RegisterLayout: radix >= 2 required");
    for (u32 j = i + 1; j < slots.size(); ++j)
      if (slots[i].name == slots[j].name)
        throw std::invalid_argument("RegisterLayout: duplicate slot name " + slots[i].name);
  }
}

QuantumState::QuantumState(RegisterLayout layout, BasisIndex idx) : layout_(std::move(layout)) {
  layout_.validate();
  if (idx.size() != layout_.size()) throw std::invalid_argument("QuantumState: index arity mismatch");
  for (u32 i = 0; i < idx.size(); ++i)
    if (idx[i] >= layout_.radix(i)) throw std::invalid_argument("QuantumState: index out of radix");
  amps_.emplace(std::move(idx), cplx(1.0, 0.0));
}

QuantumState::QuantumState(RegisterLayout layout, AmpMap amps, bool renormalize)
    : layout_(std::move(layout)), amps_(std::move(amps)) {
  layout_.validate();
  for (const auto& [idx, a] : amps_) {
    if (idx.size() != layout_.size()) throw std::invalid_argument("QuantumState: index arity mismatch");
    for (u32 i = 0; i < idx.size(); ++i)
      if (idx[i] >= layout_.radix(i)) throw std::invalid_argument("QuantumState: index out of radix");
  }
  if (renormalize) {
    double nrm = std::sqrt(norm());
    if (nrm == 0.0) throw std::invalid_argument("QuantumState: zero state");
    for (auto& [idx, a] : amps_) a /= nrm;
  }
  finalize();
}

double QuantumState::norm() const {
  double s = 0.0;
  for (const auto& [idx, a] : amps_) s += std::norm(a);
  return s;
}

cplx QuantumState::amp(const BasisIndex& idx) const {
  auto it = amps_.find(idx);
  return it == amps_.end() ? cplx(0.0, 0.0) : it->second;
}

void QuantumState::finalize() {
  for (auto it = amps_.begin(); it != amps_.end();)
    it = std::abs(it->second) < kPruneEps ? amps_.erase(it) : std::next(it);
  double n = norm();
  if (std::abs(n - 1.0) > kNormEps)
    throw std::logic_error("QuantumState: norm invariant violated");
}

void QuantumState::check_qubit(u32 slot) const {
  if (slot >= layout_.size()) throw std::invalid_argument("QuantumState: slot out of range");
  if (layout_.radix(slot) != 2) throw std::invalid_argument("QuantumState: qubit gate on non-qubit slot");
}

void QuantumState::apply_1q(u32 slot, const cplx m[2][2]) {
  check_qubit(slot);
  AmpMap next;
  next.reserve(amps_.size() * 2);
  for (const auto& [idx, a] : amps_) {
    u32 bit = idx[slot];
    for (u32 out = 0; out < 2; ++out) {
      cplx coef = m[out][bit];
      if (coef == cplx(0.0, 0.0)) continue;
      BasisIndex nidx = idx;
      nidx[slot] = out;
      next[std::move(nidx)] += coef * a;
    }
  }
  amps_ = std::move(next);
  finalize();
}

void QuantumState::x(u32 slot) {
  static const cplx m[2][2] = {{0, 1}, {1, 0}};
  apply_1q(slot, m);
}

void QuantumState::y(u32 slot) {
  static const cplx m[2][2] = {{0, cplx(0, -1)}, {cplx(0, 1), 0}};
  apply_1q(slot, m);
}

void QuantumState::z(u32 slot) {
  static const cplx m[2][2] = {{1, 0}, {0, -1}};
  apply_1q(slot, m);
}

void QuantumState::h(u32 slot) {
  const double s = 1.0 / std::sqrt(2.0);
  const cplx m[2][2] = {{s, s}, {s, -s}};
  apply_1q(slot, m);
}

void QuantumState::p(u32 slot) {
  const cplx m[2][2] = {{1, 0}, {0, cplx(0, 1)}};
  apply_1q(slot, m);
}

void QuantumState::t(u32 slot) { r_alpha(slot, 0.125); }

void QuantumState::r_alpha(u32 slot, double alpha) {
  const cplx m[2][2] = {{1, 0}, {0, std::polar(1.0, 2.0 * M_PI * alpha)}};
  apply_1q(slot, m);
}

void QuantumState::cnot(u32 control, u32 target) {
  check_qubit(control);
  check_qubit(target);
  AmpMap next;
  next.reserve(amps_.size());
  for (auto& [idx, a] : amps_) {
    BasisIndex nidx = idx;
    if (nidx[control]) nidx[target] ^= 1;
    next[std::move(nidx)] += a;
  }
  amps_ = std::move(next);
  finalize();
}

void QuantumState::toffoli(u32 c1, u32 c2, u32 target) {
  check_qubit(c1);
  check_qubit(c2);
  check_qubit(target);
  AmpMap next;
  next.reserve(amps_.size());
  for (auto& [idx, a] : amps_) {
    BasisIndex nidx = idx;
    if (nidx[c1] && nidx[c2]) nidx[target] ^= 1;
    next[std::move(nidx)] += a;
  }
  amps_ = std::move(next);
  finalize();
}

void QuantumState::cswap(u32 control, u32 a, u32 b) {
  check_qubit(control);
  check_qubit(a);
  check_qubit(b);
  AmpMap next;
  next.reserve(amps_.size());
  for (auto& [idx, amp] : amps_) {
    BasisIndex nidx = idx;
    if (nidx[control]) std::swap(nidx[a], nidx[b]);
    next[std::move(nidx)] += amp;
  }
  amps_ = std::move(next);
  finalize();
}

void QuantumState::cr_alpha(u32 control, u32 target, double alpha) {
  check_qubit(control);
  check_qubit(target);
  cplx ph = std::polar(1.0, 2.0 * M_PI * alpha);
  for (auto& [idx, a] : amps_)
    if (idx[control] && idx[target]) a *= ph;
  finalize();
}

void QuantumState::qft(const std::vector<u32>& slots, bool inverse) {
  for (u32 s : slots) check_qubit(s);
  u32 l = static_cast<u32>(slots.size());
  u64 D = u64(1) << l;
  double sign = inverse ? -1.0 : 1.0;
  // Group amplitudes by the configuration of all other slots; dense DFT per group.
  std::map<BasisIndex, std::vector<cplx>> groups;
  for (const auto& [idx, a] : amps_) {
    BasisIndex rest = idx;
    u64 x = 0;
    for (u32 j = 0; j < l; ++j) x = (x << 1) | idx[slots[j]];
    for (u32 j = 0; j < l; ++j) rest[slots[j]] = 0;
    auto& vec = groups[rest];
    if (vec.empty()) vec.assign(D, cplx(0, 0));
    vec[x] += a;
  }
  AmpMap next;
  double scale = 1.0 / std::sqrt(double(D));
  for (auto& [rest, vec] : groups) {
    for (u64 yv = 0; yv < D; ++yv) {
      cplx acc(0, 0);
      for (u64 xv = 0; xv < D; ++xv) {
        if (vec[xv] == cplx(0, 0)) continue;
        double ang = sign * 2.0 * M_PI * double((u128(xv) * yv) % D) / double(D);
        acc += vec[xv] * std::polar(1.0, ang);
      }
      if (std::abs(acc) < kPruneEps) continue;
      BasisIndex idx = rest;
      for (u32 j = 0; j < l; ++j) idx[slots[j]] = static_cast<u32>((yv >> (l - 1 - j)) & 1);
      next[std::move(idx)] = acc * scale;
    }
  }
  amps_ = std::move(next);
  finalize();
}

void QuantumState::apply_basis_map(u32 slot, const std::function<u32(u32)>& fn,
                                   const std::vector<std::pair<u32, u32>>& controls) {
  if (slot >= layout_.size()) throw std::invalid_argument("apply_basis_map: slot out of range");
  u32 radix = layout_.radix(slot);
  // Bijectivity check once up front.
  std::vector<char> seen(radix, 0);
  for (u32 v = 0; v < radix; ++v) {
    u32 w = fn(v);
    if (w >= radix || seen[w]) throw std::invalid_argument("apply_basis_map: not a permutation");
    seen[w] = 1;
  }
  AmpMap next;
  next.reserve(amps_.size());
  for (auto& [idx, a] : amps_) {
    bool active = true;
    for (const auto& [cs, cv] : controls)
      if (idx[cs] != cv) { active = false; break; }
    BasisIndex nidx = idx;
    if (active) nidx[slot] = fn(nidx[slot]);
    next[std::move(nidx)] += a;
  }
  amps_ = std::move(next);
  finalize();
}

std::vector<u32> QuantumState::measure(const std::vector<u32>& slots, Rng& rng) {
  std::map<std::vector<u32>, double> marginal;
  for (const auto& [idx, a] : amps_) {
    std::vector<u32> key(slots.size());
    for (std::size_t j = 0; j < slots.size(); ++j) key[j] = idx[slots[j]];
    marginal[key] += std::norm(a);
  }
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double pick = u(rng), acc = 0.0;
  std::vector<u32> outcome = marginal.rbegin()->first;
  for (const auto& [key, pr] : marginal) {
    acc += pr;
    if (pick <= acc) { outcome = key; break; }
  }
  AmpMap next;
  double pr = marginal[outcome];
  double scale = 1.0 / std::sqrt(pr);
  for (const auto& [idx, a] : amps_) {
    bool match = true;
    for (std::size_t j = 0; j < slots.size(); ++j)
      if (idx[slots[j]] != outcome[j]) { match = false; break; }
    if (match) next[idx] = a * scale;
  }
  amps_ = std::move(next);
  finalize();
  return outcome;
}

void QuantumState::pauli_otp_encrypt(const std::vector<u32>& slots, const std::vector<int>& x_keys,
                                     const std::vector<int>& z_keys) {
  if (x_keys.size() != slots.size() || z_keys.size() != slots.size())
    throw std::invalid_argument("pauli_otp: key length mismatch");
  for (std::size_t j = 0; j < slots.size(); ++j) {
    if (z_keys[j]) z(slots[j]);
    if (x_keys[j]) x(slots[j]);
  }
}

void QuantumState::pauli_otp_decrypt(const std::vector<u32>& slots, const std::vector<int>& x_keys,
                                     const std::vector<int>& z_keys) {
  for (std::size_t j = 0; j < slots.size(); ++j) {
    if (x_keys[j]) x(slots[j]);
    if (z_keys[j]) z(slots[j]);
  }
}

void QuantumState::apply_db_unitary(const std::vector<u32>& index_slots,
                                    const std::vector<u32>& data_slots,
                                    const std::vector<u64>& db) {
  for (u32 s : index_slots) check_qubit(s);
  for (u32 s : data_slots) check_qubit(s);
  if (db.size() != (std::size_t(1) << index_slots.size()))
    throw std::invalid_argument("apply_db_unitary: |db| != 2^index bits");
  for (const auto& [idx, a] : amps_)
    for (u32 s : data_slots)
      if (idx[s] != 0) throw std::invalid_argument("apply_db_unitary: data slot not zeroed");
  AmpMap next;
  next.reserve(amps_.size());
  for (auto& [idx, a] : amps_) {
    u64 i = 0;
    for (u32 s : index_slots) i = (i << 1) | idx[s];
    BasisIndex nidx = idx;
    u64 word = db[i];
    for (std::size_t j = 0; j < data_slots.size(); ++j)
      nidx[data_slots[j]] = static_cast<u32>((word >> (data_slots.size() - 1 - j)) & 1);
    next[std::move(nidx)] += a;
  }
  amps_ = std::move(next);
  finalize();
}

double fidelity(const QuantumState& s1, const QuantumState& s2) {
  cplx ip(0, 0);
  for (const auto& [idx, a] : s1.amps()) ip += std::conj(a) * s2.amp(idx);
  return std::norm(ip);
}

bool approx_equal(const QuantumState& s1, const QuantumState& s2, double eps) {
  return fidelity(s1, s2) >= 1.0 - eps;
}

}  // namespace qboots::qsim
