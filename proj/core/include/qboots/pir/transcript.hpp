#ifndef QBOOTS_PIR_TRANSCRIPT_HPP
#define QBOOTS_PIR_TRANSCRIPT_HPP

#include <string>
#include <vector>

#include "qboots/common.hpp"
#include "qboots/serialize.hpp"

namespace qboots::pir {

enum class MsgType { query, answer, conversion_request, conversion_reply };

const char* msg_type_name(MsgType t);
MsgType msg_type_from(const std::string& name);

struct PirMessage {
  u64 seq = 0;
  std::string sender;  // "client" or "server"
  MsgType type = MsgType::query;
  serial::Bytes payload;

  bool operator==(const PirMessage&) const = default;
};

/// JSON object with fields (seq, sender, type, payload-as-hex); one line per
/// message in transcript files and on the byte-stream transport.
std::string message_to_json_line(const PirMessage& m);
PirMessage message_from_json_line(const std::string& line);

struct Transcript {
  std::vector<PirMessage> messages;
  std::string verdict;

  void add(PirMessage m);
  std::size_t count(MsgType t) const;
  /// Client-initiated plus server-initiated request/reply exchanges.
  std::size_t rounds() const { return count(MsgType::query) + count(MsgType::conversion_request); }
  std::vector<std::size_t> message_lengths() const;

  std::string to_jsonl() const;
  static Transcript from_jsonl(const std::string& text);
};

}  // namespace qboots::pir

#endif
