#pragma once

#include <cstddef>
#include <deque>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>

namespace improvise::gateway {

struct Outgoing {
  std::shared_ptr<const std::string> text;
  bool is_frame = false;
};

/// @brief Per-client queue between the engine thread and a network writer.
///
/// A new frame replaces any frame still waiting, so a client only ever has the
/// latest one queued. Past `capacity` the oldest waiting frame is dropped; other
/// messages are never dropped, and past `hard_limit` of them the client is
/// marked overflowed and should be closed.
class ClientOutbox {
 public:
  explicit ClientOutbox(std::size_t capacity = 256, std::size_t hard_limit = 4096);

  /// Called after every successful push, from the pushing thread.
  void set_notify(std::function<void()> notify);

  /// False once the client has overflowed; the message is discarded then.
  bool push(Outgoing message);
  std::optional<Outgoing> pop();

  std::size_t size() const;
  std::size_t dropped_frames() const;
  bool overflowed() const;

 private:
  mutable std::mutex mutex_;
  std::deque<Outgoing> queue_;
  std::function<void()> notify_;
  std::size_t capacity_;
  std::size_t hard_limit_;
  std::size_t dropped_frames_ = 0;
  bool overflowed_ = false;
};

}  // namespace improvise::gateway
