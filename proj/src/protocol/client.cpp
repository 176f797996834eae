#include "vwc/protocol/client.hpp"

#include <arpa/inet.h>
#include <netdb.h>
#include <netinet/in.h>
#include <netinet/tcp.h>
#include <poll.h>
#include <sys/socket.h>

#include <array>
#include <cerrno>
#include <cstring>

#include "vwc/common/error.hpp"

namespace vwc {

namespace {

using Clock = std::chrono::steady_clock;

int remaining_ms(Clock::time_point deadline) {
  const auto left = std::chrono::duration_cast<std::chrono::milliseconds>(deadline - Clock::now());
  return left.count() < 0 ? 0 : static_cast<int>(left.count());
}

bool wait_for(int fd, short events, Clock::time_point deadline) {
  for (;;) {
    pollfd p{fd, events, 0};
    const int r = ::poll(&p, 1, remaining_ms(deadline));
    if (r > 0) return true;
    if (r == 0) return false;
    if (errno != EINTR) throw Error(std::string("poll: ") + std::strerror(errno));
  }
}

}  // namespace

HapticClient::HapticClient(const std::string& host, std::uint16_t port, Millis connect_timeout) {
  addrinfo hints{};
  hints.ai_family = AF_INET;
  hints.ai_socktype = SOCK_STREAM;
  addrinfo* res = nullptr;
  if (::getaddrinfo(host.c_str(), std::to_string(port).c_str(), &hints, &res) != 0 || !res) {
    throw Error("cannot resolve haptic host " + host);
  }
  fd_ = UniqueFd(::socket(res->ai_family, SOCK_STREAM | SOCK_NONBLOCK | SOCK_CLOEXEC, 0));
  const int rc = ::connect(fd_.get(), res->ai_addr, res->ai_addrlen);
  ::freeaddrinfo(res);
  if (rc != 0 && errno != EINPROGRESS) {
    throw Error("connect " + host + ":" + std::to_string(port) + ": " + std::strerror(errno));
  }
  if (rc != 0) {
    if (!wait_for(fd_.get(), POLLOUT, Clock::now() + connect_timeout)) throw TimeoutError();
    int err = 0;
    socklen_t len = sizeof(err);
    ::getsockopt(fd_.get(), SOL_SOCKET, SO_ERROR, &err, &len);
    if (err != 0) {
      throw Error("connect " + host + ":" + std::to_string(port) + ": " + std::strerror(err));
    }
  }
  const int one = 1;
  ::setsockopt(fd_.get(), IPPROTO_TCP, TCP_NODELAY, &one, sizeof(one));
}

void HapticClient::send_all(const std::string& bytes, Clock::time_point deadline) {
  std::size_t sent = 0;
  while (sent < bytes.size()) {
    const ssize_t n = ::send(fd_.get(), bytes.data() + sent, bytes.size() - sent,
                             MSG_DONTWAIT | MSG_NOSIGNAL);
    if (n > 0) {
      sent += static_cast<std::size_t>(n);
    } else if (n < 0 && (errno == EAGAIN || errno == EWOULDBLOCK)) {
      if (!wait_for(fd_.get(), POLLOUT, deadline)) throw TimeoutError();
    } else if (n < 0 && errno == EINTR) {
      continue;
    } else {
      throw Error(std::string("send: ") + std::strerror(errno));
    }
  }
}

Message HapticClient::request(Message msg, Millis timeout) {
  const auto deadline = Clock::now() + timeout;
  msg.seq = next_seq_++;
  send_all(encode_frame(msg), deadline);

  std::array<char, 8192> buf;
  for (;;) {
    while (auto body = decoder_.next()) {
      Message reply = decode_body(*body);
      if (reply.seq < msg.seq) continue;  // stale
      if (reply.seq != msg.seq) throw ProtocolError("response seq does not echo request");
      const bool ok = (msg.kind == MessageKind::GetPose && reply.kind == MessageKind::Pose) ||
                      (msg.kind == MessageKind::SetForceModel && reply.kind == MessageKind::Ack) ||
                      (msg.kind == MessageKind::Ping && reply.kind == MessageKind::Pong);
      if (!ok) throw ProtocolError("unexpected " + std::string(to_string(reply.kind)));
      return reply;
    }
    if (!wait_for(fd_.get(), POLLIN, deadline)) throw TimeoutError();
    const ssize_t n = ::recv(fd_.get(), buf.data(), buf.size(), MSG_DONTWAIT);
    if (n > 0) {
      decoder_.feed(std::span<const char>(buf.data(), static_cast<std::size_t>(n)));
    } else if (n == 0) {
      throw Error("haptic server closed the connection");
    } else if (errno != EAGAIN && errno != EWOULDBLOCK && errno != EINTR) {
      throw Error(std::string("recv: ") + std::strerror(errno));
    }
  }
}

StylusState HapticClient::get_pose(Millis timeout) {
  Message m;
  m.kind = MessageKind::GetPose;
  return *request(m, timeout).stylus;
}

void HapticClient::set_force_model(const ConstraintModel& model, Millis timeout) {
  Message m;
  m.kind = MessageKind::SetForceModel;
  m.model = model;
  request(m, timeout);
}

void HapticClient::ping(Millis timeout) {
  Message m;
  m.kind = MessageKind::Ping;
  request(m, timeout);
}

}  // namespace vwc
