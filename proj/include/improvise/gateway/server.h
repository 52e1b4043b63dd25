#pragma once

#include <cstdint>
#include <memory>
#include <string>

#include "improvise/gateway/engine_loop.h"

namespace improvise::gateway {

/// @brief WebSocket endpoint `/ws` and HTTP `GET /health` on one port.
///
/// Each connection parses its own messages and writes its own outbox; all musical
/// work happens on the EngineLoop thread.
class Server {
 public:
  /// Binds immediately. Throws Error(Io) when the address cannot be bound (port busy).
  Server(EngineLoop& loop, std::uint16_t port, const std::string& address = "0.0.0.0");
  ~Server();
  Server(const Server&) = delete;
  Server& operator=(const Server&) = delete;

  /// The bound port; useful after binding port 0.
  std::uint16_t port() const;

  /// Serves on a background thread.
  void start();
  /// Serves on the calling thread until stop() or SIGINT/SIGTERM.
  void run();
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace improvise::gateway
