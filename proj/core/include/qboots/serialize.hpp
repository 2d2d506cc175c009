#ifndef QBOOTS_SERIALIZE_HPP
#define QBOOTS_SERIALIZE_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "qboots/lwe.hpp"
#include "qboots/mhe.hpp"

namespace qboots::serial {

using Bytes = std::vector<std::uint8_t>;

// Canonical little-endian primitives.
void put_u32(Bytes& out, u32 v);
void put_u64(Bytes& out, u64 v);
void put_double(Bytes& out, double v);

struct Reader {
  const Bytes& buf;
  std::size_t pos = 0;

  explicit Reader(const Bytes& b) : buf(b) {}
  u32 get_u32();
  u64 get_u64();
  double get_double();
  void expect_end() const;
};

Bytes serialize_lwe(const lwe::LweCiphertext& ct);
lwe::LweCiphertext deserialize_lwe(Reader& r);

Bytes serialize_mhe(const mhe::MheCiphertext& ct);
void put_mhe(Bytes& out, const mhe::MheCiphertext& ct);
mhe::MheCiphertext deserialize_mhe(Reader& r);

std::string to_hex(const Bytes& b);
Bytes from_hex(const std::string& s);

}  // namespace qboots::serial

#endif
