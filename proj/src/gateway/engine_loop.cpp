#include "improvise/gateway/engine_loop.h"

#include <cstdio>
#include <ctime>
#include <iostream>
#include <string>
#include <utility>

#include "improvise/error.h"

namespace improvise::gateway {

namespace {

using Clock = std::chrono::steady_clock;

std::string utc_stamp(std::chrono::system_clock::time_point when) {
  const std::time_t t = std::chrono::system_clock::to_time_t(when);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y%m%dT%H%M%SZ", &tm);
  return buf;
}

}  // namespace

std::filesystem::path write_report(const std::filesystem::path& dir, const curriculum::SessionReport& report,
                                   const midi::MidiFile* recording, std::chrono::system_clock::time_point when) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::Io, "cannot create " + dir.string() + ": " + ec.message());
  char lesson[16];
  std::snprintf(lesson, sizeof lesson, "lesson%02d", report.lesson_id);
  const std::string base = utc_stamp(when) + "-" + lesson;
  std::filesystem::path json = dir / (base + ".json");
  for (int n = 2; std::filesystem::exists(json); ++n) json = dir / (base + "-" + std::to_string(n) + ".json");
  write_file_atomically(json, report_to_json(report).dump(2) + "\n");
  if (recording != nullptr) {
    auto mid = json;
    mid.replace_extension(".mid");
    write_file_atomically(mid, midi::serialize_smf(*recording));
  }
  return json;
}

EngineLoop::EngineLoop(Engine engine, LoopOptions options) : engine_(std::move(engine)), options_(std::move(options)) {
  if (!(options_.frames_per_second > 0.0)) throw Error(ErrorCode::InvalidArgument, "frame rate must be positive");
}

EngineLoop::~EngineLoop() { stop(); }

void EngineLoop::start() {
  std::lock_guard lock(mutex_);
  if (thread_.joinable()) return;
  stopping_ = false;
  thread_ = std::thread([this] { run(); });
}

void EngineLoop::stop() {
  {
    std::lock_guard lock(mutex_);
    stopping_ = true;
  }
  wake_.notify_all();
  if (thread_.joinable()) thread_.join();
}

ClientId EngineLoop::connect(std::shared_ptr<ClientOutbox> outbox) {
  const ClientId id = next_id_++;
  {
    std::lock_guard lock(mutex_);
    queue_.push_back({id, Connect{std::move(outbox)}});
  }
  wake_.notify_one();
  return id;
}

void EngineLoop::disconnect(ClientId id) {
  {
    std::lock_guard lock(mutex_);
    queue_.push_back({id, Disconnect{}});
  }
  wake_.notify_one();
}

void EngineLoop::submit(ClientId from, ClientMessage message) {
  {
    std::lock_guard lock(mutex_);
    queue_.push_back({from, std::move(message)});
  }
  wake_.notify_one();
}

void EngineLoop::reject(ClientId from, server::ErrorMsg error) {
  {
    std::lock_guard lock(mutex_);
    queue_.push_back({from, std::move(error)});
  }
  wake_.notify_one();
}

std::size_t EngineLoop::client_count() const { return client_count_.load(); }

void EngineLoop::send(ClientId to, const ServerMessage& m) {
  const auto it = clients_.find(to);
  if (it == clients_.end()) return;
  it->second->push({std::make_shared<const std::string>(serialize(m)), is_frame(m)});
}

void EngineLoop::broadcast(const std::vector<ServerMessage>& messages) {
  for (const auto& m : messages) {
    if (const auto* r = std::get_if<server::Report>(&m)) after_report(r->report);
    if (clients_.empty()) continue;
    const auto text = std::make_shared<const std::string>(serialize(m));
    for (auto& [id, outbox] : clients_) outbox->push({text, is_frame(m)});
  }
}

void EngineLoop::after_report(const curriculum::SessionReport& report) {
  if (!options_.reports_dir) return;
  try {
    const auto& rec = engine_.last_recording();
    write_report(*options_.reports_dir, report, rec ? &*rec : nullptr);
  } catch (const std::exception& e) {
    std::cerr << "improvise: could not write report: " << e.what() << "\n";
  }
}

void EngineLoop::process(Item& item) {
  if (auto* c = std::get_if<Connect>(&item.work)) {
    clients_[item.client] = c->outbox;
    client_count_ = clients_.size();
    for (const auto& m : engine_.hello()) send(item.client, m);
  } else if (std::holds_alternative<Disconnect>(item.work)) {
    clients_.erase(item.client);
    client_count_ = clients_.size();
  } else if (auto* e = std::get_if<server::ErrorMsg>(&item.work)) {
    send(item.client, *e);
  } else {
    try {
      broadcast(engine_.handle(std::get<ClientMessage>(item.work)));
    } catch (const std::exception& ex) {
      send(item.client, error_message(ex));
    }
  }
}

void EngineLoop::run() {
  const auto period = std::chrono::duration_cast<Clock::duration>(
      std::chrono::duration<double>(1.0 / options_.frames_per_second));
  auto last = Clock::now();
  auto next_frame = last + period;
  for (;;) {
    std::deque<Item> batch;
    {
      std::unique_lock lock(mutex_);
      wake_.wait_until(lock, next_frame, [this] { return stopping_ || !queue_.empty(); });
      if (stopping_) break;
      batch.swap(queue_);
    }
    const auto now = Clock::now();
    try {
      broadcast(engine_.advance_ms(std::chrono::duration<double, std::milli>(now - last).count()));
    } catch (const std::exception& e) {
      std::cerr << "improvise: clock error: " << e.what() << "\n";
    }
    last = now;
    for (auto& item : batch) process(item);
    if (now >= next_frame) {
      broadcast({engine_.frame()});
      next_frame += period;
      if (next_frame < now) next_frame = now + period;
    }
  }
}

}  // namespace improvise::gateway
