#include "qboots/pir/transport.hpp"

#include <deque>
#include <stdexcept>
#include <string>

#include <sys/socket.h>
#include <unistd.h>

namespace qboots::pir {

namespace {

struct ChannelState {
  std::deque<PirMessage> to_server;
  std::deque<PirMessage> to_client;
};

class ChannelEndpoint final : public Transport {
 public:
  ChannelEndpoint(std::shared_ptr<ChannelState> st, bool is_client)
      : st_(std::move(st)), is_client_(is_client) {}

  void send(const PirMessage& m) override {
    (is_client_ ? st_->to_server : st_->to_client).push_back(m);
  }

  PirMessage receive() override {
    auto& q = is_client_ ? st_->to_client : st_->to_server;
    if (q.empty()) throw std::runtime_error("transport: receive on empty channel");
    PirMessage m = std::move(q.front());
    q.pop_front();
    return m;
  }

 private:
  std::shared_ptr<ChannelState> st_;
  bool is_client_;
};

class SocketEndpoint final : public Transport {
 public:
  explicit SocketEndpoint(int fd) : fd_(fd) {}
  ~SocketEndpoint() override { ::close(fd_); }
  SocketEndpoint(const SocketEndpoint&) = delete;
  SocketEndpoint& operator=(const SocketEndpoint&) = delete;

  void send(const PirMessage& m) override {
    std::string line = message_to_json_line(m) + "\n";
    std::size_t off = 0;
    while (off < line.size()) {
      ssize_t n = ::write(fd_, line.data() + off, line.size() - off);
      if (n <= 0) throw std::runtime_error("transport: socket write failed");
      off += static_cast<std::size_t>(n);
    }
  }

  PirMessage receive() override {
    std::size_t nl;
    while ((nl = buf_.find('\n')) == std::string::npos) {
      char chunk[4096];
      ssize_t n = ::read(fd_, chunk, sizeof chunk);
      if (n <= 0) throw std::runtime_error("transport: socket read failed");
      buf_.append(chunk, static_cast<std::size_t>(n));
    }
    std::string line = buf_.substr(0, nl);
    buf_.erase(0, nl + 1);
    return message_from_json_line(line);
  }

 private:
  int fd_;
  std::string buf_;
};

}  // namespace

TransportPair make_channel_pair() {
  auto st = std::make_shared<ChannelState>();
  TransportPair p;
  p.client = std::make_unique<ChannelEndpoint>(st, true);
  p.server = std::make_unique<ChannelEndpoint>(st, false);
  return p;
}

TransportPair make_socket_pair() {
  int fds[2];
  if (::socketpair(AF_UNIX, SOCK_STREAM, 0, fds) != 0)
    throw std::runtime_error("transport: socketpair failed");
  TransportPair p;
  p.client = std::make_unique<SocketEndpoint>(fds[0]);
  p.server = std::make_unique<SocketEndpoint>(fds[1]);
  return p;
}

}  // namespace qboots::pir
