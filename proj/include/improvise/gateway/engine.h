#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "improvise/clock/swing.h"
#include "improvise/clock/transport.h"
#include "improvise/curriculum/lesson.h"
#include "improvise/curriculum/scoring.h"
#include "improvise/gateway/config.h"
#include "improvise/gateway/content_library.h"
#include "improvise/gateway/protocol.h"
#include "improvise/midi/smf.h"
#include "improvise/modes/modes.h"
#include "improvise/recognition/chord_recognizer.h"

namespace improvise::gateway {

struct EngineSettings {
  theory::Key key;
  double tempo_bpm = 120.0;
  double swing_ratio = 2.0;
  int split_pitch = 60;
  double hit_window_ms = 100.0;

  static EngineSettings from_config(const Config& config);
};

/// Rescales every tick of the file to `ppq`.
midi::MidiFile rescale(const midi::MidiFile& file, int ppq);

/// @brief The musical session: one owner, no threads, no wall clock.
///
/// Client messages and clock advances go in; server messages come out in emission
/// order. Selecting a lesson applies its exercise, except that the split pitch and
/// hit window always come from the settings.
class Engine {
 public:
  /// `library` may be null; content ids then resolve against the built-in content only.
  Engine(EngineSettings settings, std::vector<curriculum::LessonSpec> lessons,
         const ContentLibrary* library = nullptr);

  /// Throws Error (NotFound, InvalidArgument) for requests that cannot be applied;
  /// the engine state is unchanged in that case.
  std::vector<ServerMessage> handle(const ClientMessage& message);

  /// Moves the running clock by wall time and returns the metronome and
  /// accompaniment events crossed. Sub-tick remainders carry over.
  std::vector<ServerMessage> advance_ms(double elapsed_ms);

  /// Same, measured in ticks. Pending tempo changes still land on bar lines.
  std::vector<ServerMessage> advance_ticks(std::int64_t ticks);

  /// Messages a newly connected client needs: lesson list, content list, frame.
  std::vector<ServerMessage> hello() const;

  server::Frame frame() const;
  server::SessionState state() const;
  const clock::Transport& transport() const { return transport_; }
  const modes::ModeConfig& mode_config() const { return cfg_; }

  /// Report and learner recording of the last stopped session.
  const std::optional<curriculum::SessionReport>& last_report() const { return last_report_; }
  const std::optional<midi::MidiFile>& last_recording() const { return last_recording_; }

 private:
  std::vector<ServerMessage> on(const client::NoteOn& m);
  std::vector<ServerMessage> on(const client::NoteOff& m);
  std::vector<ServerMessage> on(const client::SetMode& m);
  std::vector<ServerMessage> on(const client::ToggleApproaches& m);
  std::vector<ServerMessage> on(const client::SetTempo& m);
  std::vector<ServerMessage> on(const client::SetSwing& m);
  std::vector<ServerMessage> on(const client::SelectLesson& m);
  std::vector<ServerMessage> on(const client::Start& m);
  std::vector<ServerMessage> on(const client::Stop& m);
  std::vector<ServerMessage> on(const client::LoadContent& m);

  midi::MidiFile resolve_content(const ContentId& id) const;
  void use_content(const ContentId& id, const midi::MidiFile& file);
  void set_progression(const theory::Progression& progression, const theory::Key& key);
  void reset_onwait();
  std::vector<theory::TimedChord> window(std::int64_t position) const;
  modes::HighlightFrame render() const;
  std::vector<ServerMessage> events_between(std::int64_t from, std::int64_t to) const;
  void record_tempo(std::int64_t tick);
  server::Report finish_session();

  EngineSettings settings_;
  std::vector<curriculum::LessonSpec> lessons_;
  const ContentLibrary* library_;

  modes::ModeConfig cfg_;
  theory::Key key_;
  clock::SwingProfile swing_;
  clock::Transport transport_;
  double carry_ms_ = 0.0;
  int session_ = 0;

  std::optional<int> lesson_id_;
  int exercise_index_ = 0;
  std::optional<curriculum::Exercise> exercise_;

  std::vector<theory::TimedChord> cycle_;
  std::int64_t cycle_length_ = 1;
  modes::OnWaitState onwait_;
  std::int64_t onwait_offset_ = 0;
  recognition::HeldNotes held_;

  std::optional<ContentId> content_id_;
  std::vector<midi::MidiEvent> accompaniment_;  ///< Straight ticks at engine ppq.
  std::int64_t accompaniment_period_ = 0;
  std::vector<recognition::Motif> questions_;

  std::vector<curriculum::ClassifiedPress> classified_;
  std::vector<midi::MidiEvent> recorded_;
  std::optional<curriculum::SessionReport> last_report_;
  std::optional<midi::MidiFile> last_recording_;
};

}  // namespace improvise::gateway
