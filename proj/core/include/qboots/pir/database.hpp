#ifndef QBOOTS_PIR_DATABASE_HPP
#define QBOOTS_PIR_DATABASE_HPP

#include <string>
#include <vector>

#include "qboots/common.hpp"

namespace qboots::pir {

/// N = 2^l words of word_bits bits each.
struct Database {
  std::vector<u64> entries;
  u32 word_bits = 1;

  u64 size() const { return entries.size(); }
  u32 index_bits() const { return static_cast<u32>(log2_exact(entries.size())); }
  void validate() const;
};

Database random_database(u64 N, u32 word_bits, Rng& rng);

/// File format: 16-byte header (8-byte magic, u32 N, u32 word_bits), then N
/// little-endian u64 words.
void save_database(const Database& db, const std::string& path);
Database load_database(const std::string& path);

}  // namespace qboots::pir

#endif
