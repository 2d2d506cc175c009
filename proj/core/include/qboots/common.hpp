#ifndef QBOOTS_COMMON_HPP
#define QBOOTS_COMMON_HPP

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace qboots {

using u64 = std::uint64_t;
using u32 = std::uint32_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;

// All randomness flows through explicitly passed generators.
using Rng = std::mt19937_64;

/// Derive an independent stream for (seed, index), e.g. one per shot.
inline Rng derive_rng(u64 seed, u64 index) {
  std::seed_seq seq{seed, index, u64{0x9e3779b97f4a7c15ULL}};
  return Rng(seq);
}

inline bool is_power_of_two(u64 x) { return x != 0 && (x & (x - 1)) == 0; }

inline u64 log2_exact(u64 x) {
  if (!is_power_of_two(x)) throw std::invalid_argument("log2_exact: not a power of two");
  u64 l = 0;
  while (x > 1) { x >>= 1; ++l; }
  return l;
}

inline u64 mod_q(u64 x, u64 q) { return x & (q - 1); }  // q power of two

inline u64 add_mod(u64 a, u64 b, u64 q) { return mod_q(a + b, q); }
inline u64 sub_mod(u64 a, u64 b, u64 q) { return mod_q(a + q - mod_q(b, q), q); }
inline u64 mul_mod(u64 a, u64 b, u64 q) {
  return static_cast<u64>((u128(a) * u128(b)) % q);
}

/// Representative in (-q/2, q/2].
inline i64 centered(u64 x, u64 q) {
  x = mod_q(x, q);
  return x > q / 2 ? static_cast<i64>(x) - static_cast<i64>(q) : static_cast<i64>(x);
}

/// round(num/den) with ties going up, num >= 0, den > 0.
inline u64 round_half_up(u64 num, u64 den) { return (2 * num + den) / (2 * den); }

/// round(x) with ties going up, for signed rationals.
inline i64 round_half_up_signed(i64 num, i64 den) {
  if (den < 0) { num = -num; den = -den; }
  i64 two = 2 * num + den;
  // floor division of two by 2*den
  i64 d = 2 * den;
  i64 qt = two / d;
  if (two % d != 0 && (two < 0)) --qt;
  return qt;
}

inline u64 uniform_u64(Rng& rng, u64 q) {
  std::uniform_int_distribution<u64> d(0, q - 1);
  return d(rng);
}

inline int uniform_bit(Rng& rng) {
  return static_cast<int>(rng() & 1u);
}

}  // namespace qboots

#endif
