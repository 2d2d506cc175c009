#include "qboots/pir/database.hpp"

#include <cstring>
#include <fstream>
#include <stdexcept>

namespace qboots::pir {

static const char kMagic[8] = {'Q', 'B', 'O', 'O', 'T', 'S', 'D', 'B'};

void Database::validate() const {
  if (entries.empty() || !is_power_of_two(entries.size()))
    throw std::invalid_argument("Database: entry count must be a power of two");
  if (word_bits < 1 || word_bits > 63)
    throw std::invalid_argument("Database: word width outside [1, 63]");
  for (u64 w : entries)
    if ((w >> word_bits) != 0) throw std::invalid_argument("Database: word exceeds width");
}

Database random_database(u64 N, u32 word_bits, Rng& rng) {
  Database db;
  db.word_bits = word_bits;
  db.entries.reserve(N);
  u64 mask = word_bits == 63 ? ~u64(0) >> 1 : (u64(1) << word_bits) - 1;
  for (u64 i = 0; i < N; ++i) db.entries.push_back((rng() & mask));
  db.validate();
  return db;
}

void save_database(const Database& db, const std::string& path) {
  db.validate();
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("save_database: cannot open " + path);
  f.write(kMagic, 8);
  u32 n = static_cast<u32>(db.entries.size());
  u32 w = db.word_bits;
  f.write(reinterpret_cast<const char*>(&n), 4);
  f.write(reinterpret_cast<const char*>(&w), 4);
  for (u64 word : db.entries) f.write(reinterpret_cast<const char*>(&word), 8);
  if (!f) throw std::runtime_error("save_database: write failed");
}

Database load_database(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("load_database: cannot open " + path);
  char magic[8];
  f.read(magic, 8);
  if (!f || std::memcmp(magic, kMagic, 8) != 0)
    throw std::runtime_error("load_database: bad magic");
  u32 n = 0, w = 0;
  f.read(reinterpret_cast<char*>(&n), 4);
  f.read(reinterpret_cast<char*>(&w), 4);
  if (!f) throw std::runtime_error("load_database: truncated header");
  Database db;
  db.word_bits = w;
  db.entries.resize(n);
  for (u32 i = 0; i < n; ++i) f.read(reinterpret_cast<char*>(&db.entries[i]), 8);
  if (!f) throw std::runtime_error("load_database: truncated body");
  db.validate();
  return db;
}

}  // namespace qboots::pir
