#ifndef QBOOTS_PIR_QCPIR_HPP
#define QBOOTS_PIR_QCPIR_HPP

#include "qboots/pir/database.hpp"
#include "qboots/pir/transcript.hpp"
#include "qboots/pir/transport.hpp"
#include "qboots/qfhe/authority.hpp"

namespace qboots::pir {

/// Per-answer server accounting for the blindness and depth audits.
struct QcpirServerAudit {
  std::size_t circuit_depth = 0;
  std::size_t gate_count = 0;
  std::size_t cswap_count = 0;
  std::size_t decrypt_events = 0;  // decryption-oracle calls during the answer
};

/// Bitwise encryptions of the index (MSB first) under the authority's key;
/// logically the server receives X-keys for an all-zero physical register.
PirMessage qcpir_query(qfhe::CrotAuthority& authority, u64 index, u32 index_bits, Rng& rng);

/// Server path: routed-tree memory circuit (budget = N) evaluated
/// homomorphically, data register measured. Answer carries the OTP word plus
/// the encrypted mask bits. Never calls the decryption oracle.
PirMessage qcpir_answer(const PirMessage& query, const Database& db,
                        qfhe::CrotAuthority& authority, Rng& rng,
                        QcpirServerAudit* audit = nullptr);

/// Client: decrypt the mask bits, XOR into the OTP word.
u64 qcpir_reconstruct(qfhe::CrotAuthority& authority, const PirMessage& answer, u32 word_bits);

struct QcpirResult {
  u64 word = 0;
  Transcript transcript;
  QcpirServerAudit audit;
};

/// One-round protocol drive over the given transport (in-process channel when
/// null), recording every message.
QcpirResult qcpir_run(const Database& db, u64 index, qfhe::CrotAuthority& authority, Rng& rng,
                      TransportPair* transport = nullptr);

enum class Protocol { qcpir, paillier_qpir };

struct PrivacyReport {
  bool lengths_equal = false;  // per-message payload sizes match across indices
  bool rounds_equal = false;
  double chi_square = 0.0;
  u32 dof = 0;
  double p_value = 1.0;  // homogeneity of the query-material histograms
  bool pass = false;
};

/// Desk-scale index-independence check, not a cryptographic proof: compares
/// transcript shapes for indices i and j and chi-square-tests the
/// client-visible query material under fresh keys per trial.
PrivacyReport privacy_smoke_test(Protocol proto, const Database& db, u64 i, u64 j, u64 trials,
                                 const mhe::MheParams& params, u64 seed);

}  // namespace qboots::pir

#endif
