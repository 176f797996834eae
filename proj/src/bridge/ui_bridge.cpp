#include "vwc/bridge/ui_bridge.hpp"

#include <cstdlib>
#include <deque>
#include <mutex>
#include <set>
#include <thread>

#include <boost/asio.hpp>
#include <boost/beast/core.hpp>
#include <boost/beast/websocket.hpp>

#include "vwc/bridge/messages.hpp"

namespace vwc {

namespace asio = boost::asio;
namespace beast = boost::beast;
namespace websocket = beast::websocket;
using tcp = asio::ip::tcp;

std::uint16_t ui_port_from_env() {
  if (const char* v = std::getenv("VWC_UI_PORT")) {
    char* end = nullptr;
    const long p = std::strtol(v, &end, 10);
    if (end != v && *end == '\0' && p > 0 && p < 65536) return static_cast<std::uint16_t>(p);
  }
  return kDefaultUiPort;
}

namespace {

class Client;

}  // namespace

struct UiBridge::Impl {
  asio::io_context io;
  tcp::acceptor acceptor{io};
  Callbacks callbacks;
  std::thread thread;
  mutable std::mutex mu;
  std::deque<json> inbox;
  std::set<std::shared_ptr<Client>> clients;

  void accept();
  void remove(const std::shared_ptr<Client>& c);
  void queue(json msg) {
    std::lock_guard lock(mu);
    inbox.push_back(std::move(msg));
  }
};

namespace {

class Client : public std::enable_shared_from_this<Client> {
 public:
  Client(tcp::socket socket, UiBridge::Impl& owner) : ws_(std::move(socket)), owner_(owner) {}

  void start() {
    ws_.set_option(websocket::stream_base::timeout::suggested(beast::role_type::server));
    ws_.async_accept([self = shared_from_this()](beast::error_code ec) {
      if (ec) return;
      {
        std::lock_guard lock(self->owner_.mu);
        self->owner_.clients.insert(self);
      }
      if (self->owner_.callbacks.on_connect) {
        for (auto& m : self->owner_.callbacks.on_connect()) self->send(m.dump());
      }
      self->read();
    });
  }

  void send(std::string text) {
    out_.push_back(std::move(text));
    if (out_.size() == 1) write();
  }

 private:
  void read() {
    ws_.async_read(buf_, [self = shared_from_this()](beast::error_code ec, std::size_t) {
      if (ec) return self->close();
      const auto text = beast::buffers_to_string(self->buf_.data());
      self->buf_.consume(self->buf_.size());
      try {
        self->owner_.queue(json::parse(text));
      } catch (const json::parse_error& e) {
        self->send(error_message(std::string("invalid JSON: ") + e.what()).dump());
      }
      self->read();
    });
  }

  void write() {
    ws_.text(true);
    ws_.async_write(asio::buffer(out_.front()),
                    [self = shared_from_this()](beast::error_code ec, std::size_t) {
                      if (ec) return self->close();
                      self->out_.pop_front();
                      if (!self->out_.empty()) self->write();
                    });
  }

  void close() {
    if (closed_) return;
    closed_ = true;
    owner_.remove(shared_from_this());
  }

  websocket::stream<beast::tcp_stream> ws_;
  UiBridge::Impl& owner_;
  beast::flat_buffer buf_;
  std::deque<std::string> out_;
  bool closed_ = false;
};

}  // namespace

void UiBridge::Impl::accept() {
  acceptor.async_accept([this](beast::error_code ec, tcp::socket socket) {
    if (ec) return;
    std::make_shared<Client>(std::move(socket), *this)->start();
    accept();
  });
}

void UiBridge::Impl::remove(const std::shared_ptr<Client>& c) {
  bool last = false;
  {
    std::lock_guard lock(mu);
    last = clients.erase(c) > 0 && clients.empty();
  }
  if (last && callbacks.on_last_disconnect) callbacks.on_last_disconnect();
}

UiBridge::UiBridge(std::uint16_t port, Callbacks callbacks, const std::string& bind)
    : impl_(std::make_unique<Impl>()) {
  impl_->callbacks = std::move(callbacks);
  const tcp::endpoint ep(asio::ip::make_address(bind), port);
  impl_->acceptor.open(ep.protocol());
  impl_->acceptor.set_option(asio::socket_base::reuse_address(true));
  impl_->acceptor.bind(ep);
  impl_->acceptor.listen();
  impl_->accept();
  impl_->thread = std::thread([this] { impl_->io.run(); });
}

UiBridge::~UiBridge() {
  asio::post(impl_->io, [this] {
    beast::error_code ec;
    impl_->acceptor.close(ec);
    impl_->io.stop();
  });
  impl_->thread.join();
}

std::uint16_t UiBridge::port() const { return impl_->acceptor.local_endpoint().port(); }

std::size_t UiBridge::clients() const {
  std::lock_guard lock(impl_->mu);
  return impl_->clients.size();
}

void UiBridge::broadcast(const json& msg) {
  auto text = std::make_shared<std::string>(msg.dump());
  asio::post(impl_->io, [this, text] {
    std::vector<std::shared_ptr<Client>> targets;
    {
      std::lock_guard lock(impl_->mu);
      targets.assign(impl_->clients.begin(), impl_->clients.end());
    }
    for (auto& c : targets) c->send(*text);
  });
}

std::vector<json> UiBridge::drain() {
  std::lock_guard lock(impl_->mu);
  std::vector<json> out(std::make_move_iterator(impl_->inbox.begin()),
                        std::make_move_iterator(impl_->inbox.end()));
  impl_->inbox.clear();
  return out;
}

}  // namespace vwc
