#ifndef QBOOTS_PIR_TRANSPORT_HPP
#define QBOOTS_PIR_TRANSPORT_HPP

#include <memory>

#include "qboots/pir/transcript.hpp"

namespace qboots::pir {

/// Bidirectional message endpoint; the protocol logic is transport-agnostic.
class Transport {
 public:
  virtual ~Transport() = default;
  virtual void send(const PirMessage& m) = 0;
  virtual PirMessage receive() = 0;
};

struct TransportPair {
  std::unique_ptr<Transport> client;
  std::unique_ptr<Transport> server;
};

/// In-process queue pair (default).
TransportPair make_channel_pair();

/// Connected local socket pair carrying one JSON line per message, the same
/// schema as transcript files.
TransportPair make_socket_pair();

}  // namespace qboots::pir

#endif
