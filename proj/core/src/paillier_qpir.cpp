#include "qboots/pir/paillier_qpir.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "qboots/qfhe/eval.hpp"
#include "qboots/qfhe/paillier_cnot.hpp"
#include "qboots/qsim/circuit.hpp"

namespace qboots::pir {

u64 paillier_decrypt_nand_cost(u32 modulus_bits) {
  u64 b = modulus_bits;
  return 320 * b * b * b;
}

namespace {

struct ConversionOutcome {
  u64 phe_ct = 0;
  bool demo_unique = false;
};

serial::Bytes json_payload(const nlohmann::json& j) {
  std::string s = j.dump();
  return serial::Bytes(s.begin(), s.end());
}

nlohmann::json json_from_payload(const serial::Bytes& b) {
  return nlohmann::json::parse(std::string(b.begin(), b.end()));
}

/// Client side of one conversion round: decrypt the requested lattice key
/// bit, re-encrypt it under Paillier, attach lattice encryptions of the
/// Paillier key bits and the converter flag.
PirMessage conversion_reply(const PirMessage& request, qfhe::CrotAuthority& authority,
                            const paillier::PaillierKeyPair& pkeys, Rng& rng) {
  serial::Reader r(request.payload);
  mhe::MheCiphertext s_ct = serial::deserialize_mhe(r);
  r.expect_end();
  int s0 = authority.decrypt_bit(s_ct);
  u64 rnd = paillier::sample_unit(pkeys.pk.params, rng);
  u64 phe_ct = paillier::paillier_encrypt(pkeys.pk, static_cast<u64>(s0), rnd);

  // Fixed-width so every reply has the same length regardless of the
  // ciphertext value (the transcript shape must not leak).
  char phe_hex[17];
  std::snprintf(phe_hex, sizeof phe_hex, "%016llx", static_cast<unsigned long long>(phe_ct));
  nlohmann::json j;
  j["phe_ct"] = std::string(phe_hex);
  std::vector<std::string> key_cts;
  auto enc_bits = [&](u64 v, u32 nbits) {
    for (u32 i = 0; i < nbits; ++i)
      key_cts.push_back(serial::to_hex(
          serial::serialize_mhe(authority.encrypt_bit(static_cast<int>((v >> i) & 1), rng))));
  };
  enc_bits(pkeys.sk.lambda, pkeys.pk.params.bits + 1);
  enc_bits(pkeys.sk.mu, pkeys.pk.params.bits + 1);
  j["phe_keys_enc"] = key_cts;
  j["converter"] = "oracle-assisted";
  j["nand_cost"] = paillier_decrypt_nand_cost(pkeys.pk.params.bits);

  PirMessage m;
  m.sender = "client";
  m.type = MsgType::conversion_reply;
  m.payload = json_payload(j);
  return m;
}

/// Server side after the reply: run the encrypted-CNOT gadget on a probe
/// |+>|0> pair against the delivered Paillier bit, recover the Pauli
/// correction keys by preimage enumeration (the oracle-assisted converter),
/// and verify they are unique for bijective moduli.
ConversionOutcome run_probe_cnot(u64 phe_ct, const paillier::PaillierKeyPair& pkeys, Rng& rng) {
  qsim::RegisterLayout pair = qfhe::cnot_pair_layout();
  qsim::AmpMap amps;
  amps[{0, 0}] = {M_SQRT1_2, 0.0};
  amps[{1, 0}] = {M_SQRT1_2, 0.0};
  qsim::QuantumState psi(pair, std::move(amps));

  qfhe::EncryptedCnotResult res =
      qfhe::paillier_encrypted_cnot(phe_ct, psi, pkeys, rng());
  qfhe::CnotPreimages pre = qfhe::cnot_preimages(pkeys.pk.params, phe_ct, res.ct_m0r0);

  ConversionOutcome out;
  out.phe_ct = phe_ct;
  out.demo_unique = pre.unique();
  return out;
}

}  // namespace

PaillierQpirResult paillier_qpir_run(const Database& db, u64 index,
                                     qfhe::CrotAuthority& authority,
                                     const paillier::PaillierKeyPair& pkeys, Rng& rng,
                                     TransportPair* transport) {
  db.validate();
  if (index >= db.size()) throw std::invalid_argument("paillier_qpir_run: index out of range");
  TransportPair local;
  if (!transport) {
    local = make_channel_pair();
    transport = &local;
  }
  PaillierQpirResult res;
  u32 l = db.index_bits();

  // Client encryption: reveal index xor mask, send lattice encryptions of
  // the mask bits (MSB first).
  u64 mask = 0;
  PirMessage q;
  q.sender = "client";
  q.type = MsgType::query;
  serial::put_u32(q.payload, l);
  for (u32 j = 0; j < l; ++j) mask |= u64(uniform_bit(rng)) << (l - 1 - j);
  serial::put_u64(q.payload, index ^ mask);
  for (u32 j = 0; j < l; ++j)
    serial::put_mhe(q.payload, authority.encrypt_bit(static_cast<int>((mask >> (l - 1 - j)) & 1), rng));
  res.transcript.add(q);
  transport->client->send(q);

  // Server preparation.
  PirMessage q_rx = transport->server->receive();
  serial::Reader qr(q_rx.payload);
  u32 l_rx = qr.get_u32();
  if (l_rx != l) throw std::runtime_error("paillier_qpir_run: index width mismatch");
  u64 masked_index = qr.get_u64();
  std::vector<mhe::MheCiphertext> enc_mask;
  for (u32 j = 0; j < l; ++j) enc_mask.push_back(serial::deserialize_mhe(qr));
  qr.expect_end();

  qsim::QramLayout ql;
  qsim::Circuit circuit =
      qsim::build_qram_circuit(db.entries, db.word_bits, static_cast<u32>(db.size()), &ql);
  res.circuit_toffolis = circuit.count(qsim::GateId::TOFFOLI) + circuit.count(qsim::GateId::CSWAP);
  res.nand_cost_per_conversion = paillier_decrypt_nand_cost(pkeys.pk.params.bits);

  qfhe::MaskedState ms;
  qsim::BasisIndex init(circuit.layout.size(), 0);
  for (u32 j = 0; j < l; ++j)
    init[ql.index_slots[j]] = static_cast<u32>((masked_index >> (l - 1 - j)) & 1);
  ms.state = qsim::QuantumState(circuit.layout, init);
  for (u32 s = 0; s < circuit.layout.size(); ++s) {
    ms.slots.push_back(s);
    ms.enc_x.push_back(mhe::mhe_trivial(0, authority.params()));
    ms.enc_z.push_back(mhe::mhe_trivial(0, authority.params()));
  }
  for (u32 j = 0; j < l; ++j) ms.enc_x[ms.pos(ql.index_slots[j])] = enc_mask[j];

  // Homomorphic evaluation with one conversion round trip per Toffoli.
  auto convert_and_toffoli = [&](u32 c1, u32 c2, u32 t) {
    PirMessage req;
    req.sender = "server";
    req.type = MsgType::conversion_request;
    req.payload = serial::serialize_mhe(ms.enc_x[ms.pos(c1)]);
    res.transcript.add(req);
    transport->server->send(req);

    PirMessage req_rx = transport->client->receive();
    PirMessage rep = conversion_reply(req_rx, authority, pkeys, rng);
    res.transcript.add(rep);
    transport->client->send(rep);

    PirMessage rep_rx = transport->server->receive();
    nlohmann::json j = json_from_payload(rep_rx.payload);
    u64 phe_ct = std::stoull(j.at("phe_ct").get<std::string>(), nullptr, 16);
    ConversionOutcome oc = run_probe_cnot(phe_ct, pkeys, rng);
    if (oc.demo_unique) ++res.demo_cnots_verified;
    ++res.conversion_rounds;

    authority.toffoli_refresh(ms, c1, c2, t, rng);
  };

  for (const auto& g : circuit.gates) {
    const auto& t = g.targets;
    switch (g.id) {
      case qsim::GateId::TOFFOLI:
        convert_and_toffoli(t[0], t[1], t[2]);
        break;
      case qsim::GateId::CSWAP:
        qfhe::eval_clifford(ms, qsim::GateId::CNOT, {t[2], t[1]});
        convert_and_toffoli(t[0], t[1], t[2]);
        qfhe::eval_clifford(ms, qsim::GateId::CNOT, {t[2], t[1]});
        break;
      case qsim::GateId::X:
      case qsim::GateId::Y:
      case qsim::GateId::Z:
      case qsim::GateId::H:
      case qsim::GateId::P:
      case qsim::GateId::CNOT:
        qfhe::eval_clifford(ms, g.id, t);
        break;
      default:
        throw std::runtime_error("paillier_qpir_run: unsupported gate in memory circuit");
    }
  }

  std::vector<u32> outcome = ms.state.measure(ql.data_slots, rng);
  u64 otp_word = 0;
  for (u32 bit : outcome) otp_word = (otp_word << 1) | bit;

  PirMessage a;
  a.sender = "server";
  a.type = MsgType::answer;
  serial::put_u32(a.payload, db.word_bits);
  serial::put_u64(a.payload, otp_word);
  for (u32 s : ql.data_slots) serial::put_mhe(a.payload, ms.enc_x[ms.pos(s)]);
  res.transcript.add(a);
  transport->server->send(a);

  // Client decryption.
  PirMessage a_rx = transport->client->receive();
  serial::Reader ar(a_rx.payload);
  u32 w = ar.get_u32();
  u64 word = ar.get_u64();
  for (u32 j = 0; j < w; ++j) {
    mhe::MheCiphertext mct = serial::deserialize_mhe(ar);
    if (authority.decrypt_bit(mct)) word ^= u64(1) << (w - 1 - j);
  }
  ar.expect_end();
  res.word = word;
  res.transcript.verdict = "ok";
  return res;
}

}  // namespace qboots::pir
