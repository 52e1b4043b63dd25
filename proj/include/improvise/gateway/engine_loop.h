#pragma once

#include <atomic>
#include <chrono>
#include <condition_variable>
#include <cstdint>
#include <deque>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <thread>
#include <variant>

#include "improvise/gateway/engine.h"
#include "improvise/gateway/outbox.h"
#include "improvise/gateway/protocol.h"

namespace improvise::gateway {

using ClientId = std::uint64_t;

struct LoopOptions {
  double frames_per_second = 60.0;
  /// Reports and session recordings go here when set.
  std::optional<std::filesystem::path> reports_dir;
};

/// `<dir>/<UTC timestamp>-lessonNN.json`, with `-2`, `-3`... appended on collision.
/// Also writes the recording next to it as `.mid` when given. Returns the JSON path.
std::filesystem::path write_report(const std::filesystem::path& dir, const curriculum::SessionReport& report,
                                   const midi::MidiFile* recording,
                                   std::chrono::system_clock::time_point when = std::chrono::system_clock::now());

/// @brief Runs an Engine on its own thread.
///
/// Network code hands in parsed messages and receives serialized text through
/// per-client outboxes; the engine itself is touched only by the loop thread.
/// Errors go back to the sender, everything else to every client. Frames go
/// out at the configured cadence and right after every handled message.
class EngineLoop {
 public:
  EngineLoop(Engine engine, LoopOptions options = {});
  ~EngineLoop();
  EngineLoop(const EngineLoop&) = delete;
  EngineLoop& operator=(const EngineLoop&) = delete;

  void start();
  /// Idempotent; joins the loop thread.
  void stop();

  /// The client receives the lesson list, content list and current frame first.
  ClientId connect(std::shared_ptr<ClientOutbox> outbox);
  void disconnect(ClientId id);

  void submit(ClientId from, ClientMessage message);
  /// Queues an error reply for a message that failed to parse.
  void reject(ClientId from, server::ErrorMsg error);

  std::size_t client_count() const;

 private:
  struct Connect {
    std::shared_ptr<ClientOutbox> outbox;
  };
  struct Disconnect {};
  using Work = std::variant<Connect, Disconnect, ClientMessage, server::ErrorMsg>;
  struct Item {
    ClientId client;
    Work work;
  };

  void run();
  void process(Item& item);
  void send(ClientId to, const ServerMessage& m);
  void broadcast(const std::vector<ServerMessage>& messages);
  void after_report(const curriculum::SessionReport& report);

  Engine engine_;
  LoopOptions options_;

  mutable std::mutex mutex_;
  std::condition_variable wake_;
  std::deque<Item> queue_;
  bool stopping_ = false;
  std::atomic<ClientId> next_id_{1};
  std::atomic<std::size_t> client_count_{0};

  std::map<ClientId, std::shared_ptr<ClientOutbox>> clients_;  ///< Loop thread only.
  std::thread thread_;
};

}  // namespace improvise::gateway
