#include "improvise/gateway/outbox.h"

#include <algorithm>
#include <utility>

namespace improvise::gateway {

ClientOutbox::ClientOutbox(std::size_t capacity, std::size_t hard_limit)
    : capacity_(std::max<std::size_t>(1, capacity)), hard_limit_(std::max(capacity_, hard_limit)) {}

void ClientOutbox::set_notify(std::function<void()> notify) {
  std::lock_guard lock(mutex_);
  notify_ = std::move(notify);
}

bool ClientOutbox::push(Outgoing message) {
  std::function<void()> notify;
  {
    std::lock_guard lock(mutex_);
    if (overflowed_) return false;
    if (message.is_frame) {
      const auto old = std::find_if(queue_.begin(), queue_.end(), [](const Outgoing& m) { return m.is_frame; });
      if (old != queue_.end()) {
        queue_.erase(old);
        ++dropped_frames_;
      }
    }
    queue_.push_back(std::move(message));
    while (queue_.size() > capacity_) {
      const auto frame = std::find_if(queue_.begin(), queue_.end(), [](const Outgoing& m) { return m.is_frame; });
      if (frame == queue_.end()) break;
      queue_.erase(frame);
      ++dropped_frames_;
    }
    if (queue_.size() > hard_limit_) {
      overflowed_ = true;
      queue_.clear();
      return false;
    }
    notify = notify_;
  }
  if (notify) notify();
  return true;
}

std::optional<Outgoing> ClientOutbox::pop() {
  std::lock_guard lock(mutex_);
  if (queue_.empty()) return std::nullopt;
  auto m = std::move(queue_.front());
  queue_.pop_front();
  return m;
}

std::size_t ClientOutbox::size() const {
  std::lock_guard lock(mutex_);
  return queue_.size();
}

std::size_t ClientOutbox::dropped_frames() const {
  std::lock_guard lock(mutex_);
  return dropped_frames_;
}

bool ClientOutbox::overflowed() const {
  std::lock_guard lock(mutex_);
  return overflowed_;
}

}  // namespace improvise::gateway
