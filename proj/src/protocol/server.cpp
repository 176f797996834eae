#include "vwc/protocol/server.hpp"

#include <arpa/inet.h>
#include <fcntl.h>
#include <netinet/in.h>
#include <netinet/tcp.h>
#include <sys/socket.h>

#include <array>
#include <cerrno>
#include <cstdlib>
#include <cstring>

#include "vwc/common/error.hpp"

namespace vwc {

std::uint16_t haptic_port_from_env(std::uint16_t fallback) {
  if (const char* env = std::getenv("VWC_HAPTIC_PORT")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0 && v < 65536) return static_cast<std::uint16_t>(v);
  }
  return fallback;
}

HapticServer::HapticServer(std::uint16_t port, const std::string& bind_address) {
  listener_ = UniqueFd(::socket(AF_INET, SOCK_STREAM | SOCK_NONBLOCK | SOCK_CLOEXEC, 0));
  if (!listener_.valid()) throw Error(std::string("socket: ") + std::strerror(errno));
  const int one = 1;
  ::setsockopt(listener_.get(), SOL_SOCKET, SO_REUSEADDR, &one, sizeof(one));

  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_port = htons(port);
  if (::inet_pton(AF_INET, bind_address.c_str(), &addr.sin_addr) != 1) {
    throw Error("invalid bind address " + bind_address);
  }
  if (::bind(listener_.get(), reinterpret_cast<sockaddr*>(&addr), sizeof(addr)) != 0) {
    throw Error("bind port " + std::to_string(port) + ": " + std::strerror(errno));
  }
  if (::listen(listener_.get(), 4) != 0) throw Error(std::string("listen: ") + std::strerror(errno));

  socklen_t len = sizeof(addr);
  ::getsockname(listener_.get(), reinterpret_cast<sockaddr*>(&addr), &len);
  port_ = ntohs(addr.sin_port);
}

void HapticServer::drop_client(ServerHandler& handler) {
  client_.reset();
  decoder_ = FrameDecoder{};
  outbound_.clear();
  ++stats_.disconnects;
  handler.on_disconnect();
}

void HapticServer::handle(const Message& m, ServerHandler& handler) {
  Message reply;
  reply.seq = m.seq;
  switch (m.kind) {
    case MessageKind::GetPose:
      reply.kind = MessageKind::Pose;
      reply.stylus = handler.on_get_pose();
      break;
    case MessageKind::SetForceModel:
      handler.on_set_model(*m.model);
      reply.kind = MessageKind::Ack;
      break;
    case MessageKind::Ping:
      reply.kind = MessageKind::Pong;
      break;
    default:
      throw ProtocolError("unexpected " + std::string(to_string(m.kind)) + " from client");
  }
  outbound_ += encode_frame(reply);
  ++stats_.frames_out;
}

bool HapticServer::flush() {
  while (!outbound_.empty()) {
    const ssize_t n = ::send(client_.get(), outbound_.data(), outbound_.size(),
                             MSG_DONTWAIT | MSG_NOSIGNAL);
    if (n > 0) {
      outbound_.erase(0, static_cast<std::size_t>(n));
      continue;
    }
    if (n < 0 && (errno == EAGAIN || errno == EWOULDBLOCK)) break;
    if (n < 0 && errno == EINTR) continue;
    return false;
  }
  return outbound_.size() <= kMaxPendingOut;
}

void HapticServer::serve_step(ServerHandler& handler) {
  if (!client_.valid()) {
    const int fd = ::accept4(listener_.get(), nullptr, nullptr, SOCK_NONBLOCK | SOCK_CLOEXEC);
    if (fd < 0) return;
    client_ = UniqueFd(fd);
    const int one = 1;
    ::setsockopt(fd, IPPROTO_TCP, TCP_NODELAY, &one, sizeof(one));
    ++stats_.connects;
  }

  std::array<char, 8192> buf;
  for (;;) {
    const ssize_t n = ::recv(client_.get(), buf.data(), buf.size(), MSG_DONTWAIT);
    if (n > 0) {
      decoder_.feed(std::span<const char>(buf.data(), static_cast<std::size_t>(n)));
      continue;
    }
    if (n < 0 && (errno == EAGAIN || errno == EWOULDBLOCK)) break;
    if (n < 0 && errno == EINTR) continue;
    drop_client(handler);  // orderly close (0) or hard error
    return;
  }

  try {
    while (auto body = decoder_.next()) {
      ++stats_.frames_in;
      handle(decode_body(*body), handler);
    }
  } catch (const ProtocolError&) {
    ++stats_.violations;
    drop_client(handler);
    return;
  }

  if (!flush()) drop_client(handler);
}

}  // namespace vwc
