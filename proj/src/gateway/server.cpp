#include "improvise/gateway/server.h"

#include <boost/asio.hpp>
#include <boost/beast/core.hpp>
#include <boost/beast/http.hpp>
#include <boost/beast/websocket.hpp>
#include <chrono>
#include <iostream>
#include <thread>

#include "improvise/error.h"

namespace improvise::gateway {

namespace beast = boost::beast;
namespace http = beast::http;
namespace websocket = beast::websocket;
namespace net = boost::asio;
using tcp = net::ip::tcp;

namespace {

constexpr std::size_t kMaxMessageBytes = 64 * 1024;

class WsSession : public std::enable_shared_from_this<WsSession> {
 public:
  WsSession(tcp::socket&& socket, EngineLoop& loop)
      : ws_(std::move(socket)), loop_(loop), outbox_(std::make_shared<ClientOutbox>()) {}

  void run(http::request<http::string_body> req) {
    beast::error_code ignored;
    beast::get_lowest_layer(ws_).socket().set_option(tcp::no_delay(true), ignored);
    ws_.read_message_max(kMaxMessageBytes);
    ws_.set_option(websocket::stream_base::timeout::suggested(beast::role_type::server));
    ws_.async_accept(req, beast::bind_front_handler(&WsSession::on_accept, shared_from_this()));
  }

 private:
  void on_accept(beast::error_code ec) {
    if (ec) return;
    std::weak_ptr<WsSession> weak = shared_from_this();
    outbox_->set_notify([weak] {
      if (auto self = weak.lock()) net::post(self->ws_.get_executor(), [self] { self->write_next(); });
    });
    id_ = loop_.connect(outbox_);
    connected_ = true;
    read_next();
  }

  void read_next() { ws_.async_read(buffer_, beast::bind_front_handler(&WsSession::on_read, shared_from_this())); }

  void on_read(beast::error_code ec, std::size_t) {
    if (ec) return close();
    const std::string text = beast::buffers_to_string(buffer_.data());
    buffer_.consume(buffer_.size());
    try {
      loop_.submit(id_, parse_client_message(text));
    } catch (const std::exception& e) {
      loop_.reject(id_, error_message(e));
    }
    read_next();
  }

  void write_next() {
    if (writing_ || closed_) return;
    auto next = outbox_->pop();
    if (!next) {
      if (outbox_->overflowed()) {
        closed_ = true;
        ws_.async_close(websocket::close_code::policy_error, [self = shared_from_this()](beast::error_code) {});
        release();
      }
      return;
    }
    writing_ = true;
    current_ = next->text;
    ws_.text(true);
    ws_.async_write(net::buffer(*current_), beast::bind_front_handler(&WsSession::on_write, shared_from_this()));
  }

  void on_write(beast::error_code ec, std::size_t) {
    writing_ = false;
    current_.reset();
    if (ec) return close();
    write_next();
  }

  void close() {
    closed_ = true;
    release();
  }

  void release() {
    if (connected_) {
      connected_ = false;
      loop_.disconnect(id_);
    }
  }

  websocket::stream<beast::tcp_stream> ws_;
  EngineLoop& loop_;
  std::shared_ptr<ClientOutbox> outbox_;
  beast::flat_buffer buffer_;
  std::shared_ptr<const std::string> current_;
  ClientId id_ = 0;
  bool connected_ = false;
  bool writing_ = false;
  bool closed_ = false;
};

class HttpSession : public std::enable_shared_from_this<HttpSession> {
 public:
  HttpSession(tcp::socket&& socket, EngineLoop& loop, std::chrono::steady_clock::time_point started)
      : stream_(std::move(socket)), loop_(loop), started_(started) {}

  void run() {
    net::dispatch(stream_.get_executor(), beast::bind_front_handler(&HttpSession::read_next, shared_from_this()));
  }

 private:
  void read_next() {
    req_ = {};
    stream_.expires_after(std::chrono::seconds(30));
    http::async_read(stream_, buffer_, req_, beast::bind_front_handler(&HttpSession::on_read, shared_from_this()));
  }

  void on_read(beast::error_code ec, std::size_t) {
    if (ec) return;
    if (websocket::is_upgrade(req_)) {
      if (req_.target() == "/ws") {
        stream_.expires_never();
        std::make_shared<WsSession>(stream_.release_socket(), loop_)->run(std::move(req_));
        return;
      }
    }
    respond();
  }

  void respond() {
    auto res = std::make_shared<http::response<http::string_body>>();
    res->version(req_.version());
    res->keep_alive(req_.keep_alive());
    res->set(http::field::server, "improvise");
    if (req_.target() == "/health") {
      if (req_.method() == http::verb::get) {
        const double uptime = std::chrono::duration<double>(std::chrono::steady_clock::now() - started_).count();
        res->result(http::status::ok);
        res->set(http::field::content_type, "application/json");
        res->body() = Json{{"status", "ok"}, {"clients", loop_.client_count()}, {"uptime_s", uptime}}.dump();
      } else {
        res->result(http::status::method_not_allowed);
        res->set(http::field::allow, "GET");
        res->set(http::field::content_type, "application/json");
        res->body() = Json{{"error", "method not allowed"}}.dump();
      }
    } else {
      res->result(http::status::not_found);
      res->set(http::field::content_type, "application/json");
      res->body() = Json{{"error", "not found"}}.dump();
    }
    res->prepare_payload();
    http::async_write(stream_, *res, [self = shared_from_this(), res](beast::error_code ec, std::size_t) {
      if (ec || !res->keep_alive()) {
        beast::error_code ignored;
        self->stream_.socket().shutdown(tcp::socket::shutdown_send, ignored);
        return;
      }
      self->read_next();
    });
  }

  beast::tcp_stream stream_;
  EngineLoop& loop_;
  std::chrono::steady_clock::time_point started_;
  beast::flat_buffer buffer_;
  http::request<http::string_body> req_;
};

}  // namespace

struct Server::Impl {
  Impl(EngineLoop& l, std::uint16_t port, const std::string& address) : loop(l), acceptor(ioc) {
    beast::error_code ec;
    const auto addr = net::ip::make_address(address, ec);
    if (ec) throw Error(ErrorCode::InvalidArgument, "bad listen address " + address);
    const tcp::endpoint endpoint(addr, port);
    acceptor.open(endpoint.protocol(), ec);
    if (!ec) acceptor.set_option(net::socket_base::reuse_address(true), ec);
    if (!ec) acceptor.bind(endpoint, ec);
    if (!ec) acceptor.listen(net::socket_base::max_listen_connections, ec);
    if (ec) {
      throw Error(ErrorCode::Io, "cannot listen on " + address + ":" + std::to_string(port) + ": " + ec.message());
    }
  }

  void accept_next() {
    acceptor.async_accept(net::make_strand(ioc), [this](beast::error_code ec, tcp::socket socket) {
      if (ec) {
        if (ec == net::error::operation_aborted) return;
      } else {
        std::make_shared<HttpSession>(std::move(socket), loop, started)->run();
      }
      accept_next();
    });
  }

  EngineLoop& loop;
  net::io_context ioc;
  tcp::acceptor acceptor;
  std::chrono::steady_clock::time_point started = std::chrono::steady_clock::now();
  std::thread thread;
};

Server::Server(EngineLoop& loop, std::uint16_t port, const std::string& address)
    : impl_(std::make_unique<Impl>(loop, port, address)) {}

Server::~Server() { stop(); }

std::uint16_t Server::port() const { return impl_->acceptor.local_endpoint().port(); }

void Server::start() {
  if (impl_->thread.joinable()) return;
  impl_->accept_next();
  impl_->thread = std::thread([this] { impl_->ioc.run(); });
}

void Server::run() {
  net::signal_set signals(impl_->ioc, SIGINT, SIGTERM);
  signals.async_wait([this](beast::error_code, int) { impl_->ioc.stop(); });
  impl_->accept_next();
  impl_->ioc.run();
}

void Server::stop() {
  impl_->ioc.stop();
  if (impl_->thread.joinable()) impl_->thread.join();
}

}  // namespace improvise::gateway
