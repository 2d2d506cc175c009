#include "qboots/pir/qcpir.hpp"

#include <stdexcept>

#include <boost/math/distributions/chi_squared.hpp>

#include "qboots/pir/paillier_qpir.hpp"
#include "qboots/qfhe/eval.hpp"
#include "qboots/qsim/circuit.hpp"

namespace qboots::pir {

PirMessage qcpir_query(qfhe::CrotAuthority& authority, u64 index, u32 index_bits, Rng& rng) {
  if (index_bits < 1 || index_bits > 63)
    throw std::invalid_argument("qcpir_query: index width outside [1, 63]");
  if (index >= (u64(1) << index_bits)) throw std::invalid_argument("qcpir_query: index out of range");
  PirMessage m;
  m.sender = "client";
  m.type = MsgType::query;
  serial::put_u32(m.payload, index_bits);
  for (u32 j = 0; j < index_bits; ++j) {
    int bit = static_cast<int>((index >> (index_bits - 1 - j)) & 1);
    serial::put_mhe(m.payload, authority.encrypt_bit(bit, rng));
  }
  return m;
}

PirMessage qcpir_answer(const PirMessage& query, const Database& db,
                        qfhe::CrotAuthority& authority, Rng& rng, QcpirServerAudit* audit) {
  db.validate();
  if (query.type != MsgType::query) throw std::invalid_argument("qcpir_answer: not a query");
  serial::Reader r(query.payload);
  u32 l = r.get_u32();
  if (l != db.index_bits()) throw std::invalid_argument("qcpir_answer: index width mismatch");
  std::vector<mhe::MheCiphertext> enc_index;
  enc_index.reserve(l);
  for (u32 j = 0; j < l; ++j) enc_index.push_back(serial::deserialize_mhe(r));
  r.expect_end();

  qsim::QramLayout ql;
  qsim::Circuit circuit =
      qsim::build_qram_circuit(db.entries, db.word_bits, static_cast<u32>(db.size()), &ql);

  qfhe::MaskedState ms;
  ms.state = qsim::QuantumState(circuit.layout, qsim::BasisIndex(circuit.layout.size(), 0));
  for (u32 s = 0; s < circuit.layout.size(); ++s) {
    ms.slots.push_back(s);
    ms.enc_x.push_back(mhe::mhe_trivial(0, authority.params()));
    ms.enc_z.push_back(mhe::mhe_trivial(0, authority.params()));
  }
  for (u32 j = 0; j < l; ++j) ms.enc_x[ms.pos(ql.index_slots[j])] = enc_index[j];

  std::size_t mark = authority.audit_mark();
  qfhe::eval_unitary_homomorphic(ms, circuit, authority, rng);

  std::vector<u32> outcome = ms.state.measure(ql.data_slots, rng);
  u64 otp_word = 0;
  for (u32 bit : outcome) otp_word = (otp_word << 1) | bit;

  PirMessage a;
  a.sender = "server";
  a.type = MsgType::answer;
  serial::put_u32(a.payload, db.word_bits);
  serial::put_u64(a.payload, otp_word);
  for (u32 s : ql.data_slots) serial::put_mhe(a.payload, ms.enc_x[ms.pos(s)]);

  if (audit) {
    audit->circuit_depth = circuit.depth();
    audit->gate_count = circuit.gate_count();
    audit->cswap_count = ql.cswap_count;
    audit->decrypt_events = 0;
    const auto& log = authority.audit_log();
    for (std::size_t i = mark; i < log.size(); ++i)
      if (log[i].find(" decrypt_bit ") != std::string::npos) ++audit->decrypt_events;
  }
  return a;
}

u64 qcpir_reconstruct(qfhe::CrotAuthority& authority, const PirMessage& answer, u32 word_bits) {
  if (answer.type != MsgType::answer) throw std::invalid_argument("qcpir_reconstruct: not an answer");
  serial::Reader r(answer.payload);
  u32 w = r.get_u32();
  if (w != word_bits) throw std::invalid_argument("qcpir_reconstruct: word width mismatch");
  u64 word = r.get_u64();
  for (u32 j = 0; j < w; ++j) {
    mhe::MheCiphertext mask = serial::deserialize_mhe(r);
    if (authority.decrypt_bit(mask)) word ^= u64(1) << (w - 1 - j);
  }
  r.expect_end();
  return word;
}

QcpirResult qcpir_run(const Database& db, u64 index, qfhe::CrotAuthority& authority, Rng& rng,
                      TransportPair* transport) {
  TransportPair local;
  if (!transport) {
    local = make_channel_pair();
    transport = &local;
  }
  QcpirResult res;

  PirMessage q = qcpir_query(authority, index, db.index_bits(), rng);
  res.transcript.add(q);
  q.seq = res.transcript.messages.back().seq;
  transport->client->send(q);

  PirMessage q_rx = transport->server->receive();
  PirMessage a = qcpir_answer(q_rx, db, authority, rng, &res.audit);
  res.transcript.add(a);
  a.seq = res.transcript.messages.back().seq;
  transport->server->send(a);

  PirMessage a_rx = transport->client->receive();
  res.word = qcpir_reconstruct(authority, a_rx, db.word_bits);
  res.transcript.verdict = "ok";
  return res;
}

namespace {

u64 payload_hash(const serial::Bytes& b) {
  u64 h = 1469598103934665603ULL;
  for (std::uint8_t c : b) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::vector<std::size_t> transcript_lengths(Protocol proto, const Database& db, u64 index,
                                            const mhe::MheParams& params, u64 seed,
                                            std::size_t* rounds) {
  qfhe::CrotAuthority authority(params, 1, seed);
  Rng rng = derive_rng(seed, 1);
  Transcript t;
  if (proto == Protocol::qcpir) {
    t = qcpir_run(db, index, authority, rng).transcript;
  } else {
    auto pkeys = paillier::paillier_keygen_toy(15);
    t = paillier_qpir_run(db, index, authority, pkeys, rng).transcript;
  }
  *rounds = t.rounds();
  return t.message_lengths();
}

}  // namespace

PrivacyReport privacy_smoke_test(Protocol proto, const Database& db, u64 i, u64 j, u64 trials,
                                 const mhe::MheParams& params, u64 seed) {
  if (i == j) throw std::invalid_argument("privacy_smoke_test: indices must differ");
  db.validate();
  PrivacyReport rep;

  std::size_t rounds_i = 0, rounds_j = 0;
  auto len_i = transcript_lengths(proto, db, i, params, seed ^ 0x5151, &rounds_i);
  auto len_j = transcript_lengths(proto, db, j, params, seed ^ 0xA2A2, &rounds_j);
  rep.lengths_equal = len_i == len_j;
  rep.rounds_equal = rounds_i == rounds_j;

  // Query-material histograms under fresh keys: hash residues of the
  // encrypted index bits (qcpir) or the revealed masked index (paillier).
  std::size_t bins = proto == Protocol::qcpir ? 16 : db.size();
  std::vector<u64> hist_i(bins, 0), hist_j(bins, 0);
  u32 l = db.index_bits();
  for (u64 t = 0; t < trials; ++t) {
    qfhe::CrotAuthority authority(params, 1, derive_rng(seed, 2 + t)());
    Rng rng = derive_rng(seed, 1000000 + t);
    if (proto == Protocol::qcpir) {
      ++hist_i[payload_hash(qcpir_query(authority, i, l, rng).payload) % bins];
      ++hist_j[payload_hash(qcpir_query(authority, j, l, rng).payload) % bins];
    } else {
      u64 mask = rng() & (db.size() - 1);
      ++hist_i[(i ^ mask) % bins];
      mask = rng() & (db.size() - 1);
      ++hist_j[(j ^ mask) % bins];
    }
  }

  double stat = 0.0;
  u32 dof = 0;
  for (std::size_t b = 0; b < bins; ++b) {
    double tot = double(hist_i[b]) + double(hist_j[b]);
    if (tot == 0.0) continue;
    double d = double(hist_i[b]) - double(hist_j[b]);
    stat += d * d / tot;
    ++dof;
  }
  rep.chi_square = stat;
  rep.dof = dof > 0 ? dof - 1 : 0;
  rep.p_value = 1.0;
  if (rep.dof > 0) {
    boost::math::chi_squared dist(rep.dof);
    rep.p_value = 1.0 - boost::math::cdf(dist, stat);
  }
  rep.pass = rep.lengths_equal && rep.rounds_equal && rep.p_value > 0.01;
  return rep;
}

}  // namespace qboots::pir
