#include "qboots/pir/transcript.hpp"

#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace qboots::pir {

const char* msg_type_name(MsgType t) {
  switch (t) {
    case MsgType::query: return "query";
    case MsgType::answer: return "answer";
    case MsgType::conversion_request: return "conversion_request";
    case MsgType::conversion_reply: return "conversion_reply";
  }
  return "?";
}

MsgType msg_type_from(const std::string& name) {
  if (name == "query") return MsgType::query;
  if (name == "answer") return MsgType::answer;
  if (name == "conversion_request") return MsgType::conversion_request;
  if (name == "conversion_reply") return MsgType::conversion_reply;
  throw std::runtime_error("transcript: unknown message type " + name);
}

std::string message_to_json_line(const PirMessage& m) {
  nlohmann::json j;
  j["seq"] = m.seq;
  j["sender"] = m.sender;
  j["type"] = msg_type_name(m.type);
  j["payload"] = serial::to_hex(m.payload);
  return j.dump();
}

PirMessage message_from_json_line(const std::string& line) {
  nlohmann::json j = nlohmann::json::parse(line);
  PirMessage m;
  m.seq = j.at("seq").get<u64>();
  m.sender = j.at("sender").get<std::string>();
  m.type = msg_type_from(j.at("type").get<std::string>());
  m.payload = serial::from_hex(j.at("payload").get<std::string>());
  return m;
}

void Transcript::add(PirMessage m) {
  m.seq = messages.size();
  messages.push_back(std::move(m));
}

std::size_t Transcript::count(MsgType t) const {
  std::size_t c = 0;
  for (const auto& m : messages)
    if (m.type == t) ++c;
  return c;
}

std::vector<std::size_t> Transcript::message_lengths() const {
  std::vector<std::size_t> out;
  out.reserve(messages.size());
  for (const auto& m : messages) out.push_back(m.payload.size());
  return out;
}

std::string Transcript::to_jsonl() const {
  std::ostringstream os;
  for (const auto& m : messages) os << message_to_json_line(m) << '\n';
  return os.str();
}

Transcript Transcript::from_jsonl(const std::string& text) {
  Transcript t;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    t.messages.push_back(message_from_json_line(line));
  }
  return t;
}

}  // namespace qboots::pir
