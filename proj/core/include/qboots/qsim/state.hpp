#ifndef QBOOTS_QSIM_STATE_HPP
#define QBOOTS_QSIM_STATE_HPP

#include <complex>
#include <cstdint>
#include <functional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "qboots/common.hpp"

namespace qboots::qsim {

using cplx = std::complex<double>;
using u32 = std::uint32_t;

inline constexpr double kPruneEps = 1e-14;
inline constexpr double kNormEps = 1e-10;

struct Slot {
  std::string name;
  u32 radix = 2;
};

/// Ordered register slots; qubit registers are radix-2 slots, group-valued
/// registers are a single slot of their radix.
struct RegisterLayout {
  std::vector<Slot> slots;

  u32 size() const { return static_cast<u32>(slots.size()); }
  u32 radix(u32 i) const { return slots.at(i).radix; }
  u32 find(const std::string& name) const;
  void validate() const;
};

using BasisIndex = std::vector<u32>;

struct BasisIndexHash {
  std::size_t operator()(const BasisIndex& v) const {
    std::size_t h = 1469598103934665603ULL;
    for (u32 x : v) {
      h ^= x;
      h *= 1099511628211ULL;
    }
    return h;
  }
};

using AmpMap = std::unordered_map<BasisIndex, cplx, BasisIndexHash>;

class QuantumState {
 public:
  QuantumState() = default;
  /// |idx> on the given layout.
  QuantumState(RegisterLayout layout, BasisIndex idx);
  /// Explicit superposition; normalizes if asked.
  QuantumState(RegisterLayout layout, AmpMap amps, bool renormalize = false);

  const RegisterLayout& layout() const { return layout_; }
  const AmpMap& amps() const { return amps_; }
  double norm() const;
  cplx amp(const BasisIndex& idx) const;

  // single-qubit gates (slot must be radix 2)
  void x(u32 slot);
  void y(u32 slot);
  void z(u32 slot);
  void h(u32 slot);
  void p(u32 slot);  // diag(1, i)
  void t(u32 slot);  // diag(1, e^{i pi/4})
  void r_alpha(u32 slot, double alpha);  // diag(1, e^{2 pi i alpha})

  void cnot(u32 control, u32 target);
  void toffoli(u32 c1, u32 c2, u32 target);
  void cswap(u32 control, u32 a, u32 b);
  void cr_alpha(u32 control, u32 target, double alpha);

  /// Exact DFT over the listed qubit slots (slots[0] = most significant bit):
  /// |x> -> D^{-1/2} sum_y e^{+-2 pi i x y / D} |y>.
  void qft(const std::vector<u32>& slots, bool inverse = false);

  /// Permutation of one slot's computational basis, optionally conditioned on
  /// exact values of control slots. fn must be a bijection on [radix].
  void apply_basis_map(u32 slot, const std::function<u32(u32)>& fn,
                       const std::vector<std::pair<u32, u32>>& controls = {});

  /// Measure the listed slots; returns the outcome and collapses in place.
  std::vector<u32> measure(const std::vector<u32>& slots, Rng& rng);

  /// X^a Z^b masks over the listed qubit slots.
  void pauli_otp_encrypt(const std::vector<u32>& slots, const std::vector<int>& x_keys,
                         const std::vector<int>& z_keys);
  void pauli_otp_decrypt(const std::vector<u32>& slots, const std::vector<int>& x_keys,
                         const std::vector<int>& z_keys);

  /// |i>|0...0> -> |i>|DB_i> over qubit index/data slots (big-endian bits).
  void apply_db_unitary(const std::vector<u32>& index_slots, const std::vector<u32>& data_slots,
                        const std::vector<u64>& db);

  /// Drops near-zero amplitudes and checks the norm invariant.
  void finalize();

 private:
  void check_qubit(u32 slot) const;
  void apply_1q(u32 slot, const cplx m[2][2]);

  RegisterLayout layout_;
  AmpMap amps_;
};

/// |<s1|s2>|^2; states must share a layout shape.
double fidelity(const QuantumState& s1, const QuantumState& s2);

/// Canonical equality: fidelity within eps of 1 (global-phase-insensitive).
bool approx_equal(const QuantumState& s1, const QuantumState& s2, double eps = 1e-9);

}  // namespace qboots::qsim

#endif
