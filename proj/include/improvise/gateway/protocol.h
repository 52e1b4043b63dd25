#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "improvise/clock/swing.h"
#include "improvise/curriculum/scoring.h"
#include "improvise/gateway/content_library.h"
#include "improvise/gateway/json_codec.h"
#include "improvise/modes/frame.h"
#include "improvise/modes/modes.h"

namespace improvise::gateway {

namespace client {

struct NoteOn {
  int pitch = 60;
  std::optional<int> velocity;
  friend bool operator==(const NoteOn&, const NoteOn&) = default;
};
struct NoteOff {
  int pitch = 60;
  std::optional<int> velocity;
  friend bool operator==(const NoteOff&, const NoteOff&) = default;
};
struct SetMode {
  modes::Mode mode = modes::Mode::GuidedPress;
  friend bool operator==(const SetMode&, const SetMode&) = default;
};
struct ToggleApproaches {
  std::optional<modes::ApproachKind> kind;  ///< Also switches the approach kind when set.
  friend bool operator==(const ToggleApproaches&, const ToggleApproaches&) = default;
};
struct SetTempo {
  double bpm = 120.0;
  friend bool operator==(const SetTempo&, const SetTempo&) = default;
};
struct SetSwing {
  double ratio = 2.0;
  std::optional<clock::Subdivision> subdivision;
  friend bool operator==(const SetSwing&, const SetSwing&) = default;
};
struct SelectLesson {
  int id = 1;
  std::optional<int> exercise;
  friend bool operator==(const SelectLesson&, const SelectLesson&) = default;
};
struct Start {
  friend bool operator==(const Start&, const Start&) = default;
};
struct Stop {
  friend bool operator==(const Stop&, const Stop&) = default;
};
struct LoadContent {
  ContentId id;
  friend bool operator==(const LoadContent&, const LoadContent&) = default;
};

}  // namespace client

using ClientMessage = std::variant<client::NoteOn, client::NoteOff, client::SetMode, client::ToggleApproaches,
                                   client::SetTempo, client::SetSwing, client::SelectLesson, client::Start,
                                   client::Stop, client::LoadContent>;

inline constexpr double kMinTempoBpm = 20.0;
inline constexpr double kMaxTempoBpm = 400.0;

/// Throws Error(Protocol) for invalid JSON, an unknown type, or a missing or out-of-range field.
ClientMessage parse_client_message(std::string_view text);
ClientMessage client_message_from_json(const Json& j);
Json client_message_to_json(const ClientMessage& m);
std::string_view client_message_type(const ClientMessage& m);

namespace server {

/// Session settings sent along with every frame.
struct SessionState {
  modes::Mode mode = modes::Mode::GuidedPress;
  std::optional<int> lesson_id;
  int exercise = 0;
  bool running = false;
  double tempo_bpm = 120.0;
  clock::SwingProfile swing;
  bool approaches_on = false;
  modes::ApproachKind approach_kind = modes::ApproachKind::HalfStep;
  int split_pitch = 60;
  std::string key = "C major";
  std::optional<ContentId> content_id;
  int session = 0;  ///< Counts starts; frame_tick restarts at 0 with each session.
  friend bool operator==(const SessionState&, const SessionState&) = default;
};

struct Frame {
  modes::HighlightFrame frame;
  SessionState state;
  friend bool operator==(const Frame&, const Frame&) = default;
};
struct PressClassMsg {
  int pitch = 60;
  std::int64_t tick = 0;
  modes::PressClass press = modes::PressClass::OutOfSet;
  std::optional<double> timing_error_ms;
  friend bool operator==(const PressClassMsg&, const PressClassMsg&) = default;
};
struct Report {
  curriculum::SessionReport report;
  friend bool operator==(const Report&, const Report&) = default;
};
struct LessonSummary {
  int id = 1;
  std::string title;
  std::string label;
  std::string objective;
  std::vector<std::string> tools;
  int exercises = 0;
  friend bool operator==(const LessonSummary&, const LessonSummary&) = default;
};
struct LessonList {
  std::vector<LessonSummary> lessons;
  friend bool operator==(const LessonList&, const LessonList&) = default;
};
struct ContentList {
  std::vector<ManifestEntry> content;
  friend bool operator==(const ContentList&, const ContentList&) = default;
};
struct Accompaniment {
  midi::MidiEvent event;  ///< Tick on the engine clock, swing applied.
  friend bool operator==(const Accompaniment&, const Accompaniment&) = default;
};
struct Metronome {
  std::int64_t tick = 0;
  bool accent = false;
  friend bool operator==(const Metronome&, const Metronome&) = default;
};
struct ErrorMsg {
  std::string code;
  std::string message;
  friend bool operator==(const ErrorMsg&, const ErrorMsg&) = default;
};

LessonSummary summarize(const curriculum::LessonSpec& lesson);

}  // namespace server

using ServerMessage = std::variant<server::Frame, server::PressClassMsg, server::Report, server::LessonList,
                                   server::ContentList, server::Accompaniment, server::Metronome, server::ErrorMsg>;

Json server_message_to_json(const ServerMessage& m);
/// Throws Error(Protocol) like parse_client_message.
ServerMessage server_message_from_json(const Json& j);
ServerMessage parse_server_message(std::string_view text);
std::string_view server_message_type(const ServerMessage& m);

/// Compact single-line JSON.
std::string serialize(const ClientMessage& m);
std::string serialize(const ServerMessage& m);

inline bool is_frame(const ServerMessage& m) { return std::holds_alternative<server::Frame>(m); }

server::ErrorMsg error_message(const std::exception& e);

}  // namespace improvise::gateway
