#include "qboots/serialize.hpp"

#include <bit>
#include <stdexcept>

namespace qboots::serial {

void put_u32(Bytes& out, u32 v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

void put_u64(Bytes& out, u64 v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

void put_double(Bytes& out, double v) { put_u64(out, std::bit_cast<u64>(v)); }

u32 Reader::get_u32() {
  if (pos + 4 > buf.size()) throw std::runtime_error("serialize: truncated input");
  u32 v = 0;
  for (int i = 0; i < 4; ++i) v |= u32(buf[pos + i]) << (8 * i);
  pos += 4;
  return v;
}

u64 Reader::get_u64() {
  if (pos + 8 > buf.size()) throw std::runtime_error("serialize: truncated input");
  u64 v = 0;
  for (int i = 0; i < 8; ++i) v |= u64(buf[pos + i]) << (8 * i);
  pos += 8;
  return v;
}

double Reader::get_double() { return std::bit_cast<double>(get_u64()); }

void Reader::expect_end() const {
  if (pos != buf.size()) throw std::runtime_error("serialize: trailing bytes");
}

Bytes serialize_lwe(const lwe::LweCiphertext& ct) {
  Bytes out;
  put_u64(out, ct.params.Q);
  put_u64(out, ct.params.L);
  put_u32(out, ct.params.n);
  put_u64(out, ct.params.B);
  put_double(out, ct.noise_bound);
  put_u32(out, static_cast<u32>(ct.a.size()));
  for (u64 ai : ct.a) put_u64(out, ai);
  put_u64(out, ct.b);
  return out;
}

lwe::LweCiphertext deserialize_lwe(Reader& r) {
  lwe::LweCiphertext ct;
  ct.params.Q = r.get_u64();
  ct.params.L = r.get_u64();
  ct.params.n = r.get_u32();
  ct.params.B = r.get_u64();
  ct.noise_bound = r.get_double();
  u32 n = r.get_u32();
  ct.a.reserve(n);
  for (u32 i = 0; i < n; ++i) ct.a.push_back(r.get_u64());
  ct.b = r.get_u64();
  return ct;
}

void put_mhe(Bytes& out, const mhe::MheCiphertext& ct) {
  put_u64(out, ct.params.Qp);
  put_u32(out, ct.params.np);
  put_u64(out, ct.params.beta_init);
  put_double(out, ct.params.beta_acc);
  put_double(out, ct.noise);
  put_u64(out, static_cast<u64>(static_cast<i64>(ct.key_id)));
  put_u32(out, ct.C.rows);
  put_u32(out, ct.C.cols);
  for (u64 v : ct.C.v) put_u64(out, v);
}

Bytes serialize_mhe(const mhe::MheCiphertext& ct) {
  Bytes out;
  put_mhe(out, ct);
  return out;
}

mhe::MheCiphertext deserialize_mhe(Reader& r) {
  mhe::MheCiphertext ct;
  ct.params.Qp = r.get_u64();
  ct.params.np = r.get_u32();
  ct.params.beta_init = r.get_u64();
  ct.params.beta_acc = r.get_double();
  ct.noise = r.get_double();
  ct.key_id = static_cast<int>(static_cast<i64>(r.get_u64()));
  ct.C.rows = r.get_u32();
  ct.C.cols = r.get_u32();
  std::size_t count = std::size_t(ct.C.rows) * ct.C.cols;
  if (count > (std::size_t(1) << 28)) throw std::runtime_error("serialize: matrix too large");
  ct.C.v.reserve(count);
  for (std::size_t i = 0; i < count; ++i) ct.C.v.push_back(r.get_u64());
  return ct;
}

static const char* kHex = "0123456789abcdef";

std::string to_hex(const Bytes& b) {
  std::string s;
  s.reserve(b.size() * 2);
  for (std::uint8_t c : b) {
    s.push_back(kHex[c >> 4]);
    s.push_back(kHex[c & 0xF]);
  }
  return s;
}

static int hex_nibble(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  throw std::runtime_error("serialize: bad hex digit");
}

Bytes from_hex(const std::string& s) {
  if (s.size() % 2) throw std::runtime_error("serialize: odd hex length");
  Bytes out;
  out.reserve(s.size() / 2);
  for (std::size_t i = 0; i < s.size(); i += 2)
    out.push_back(static_cast<std::uint8_t>(hex_nibble(s[i]) * 16 + hex_nibble(s[i + 1])));
  return out;
}

}  // namespace qboots::serial
