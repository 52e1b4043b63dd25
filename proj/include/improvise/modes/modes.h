#pragma once

#include <array>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "improvise/clock/transport.h"
#include "improvise/midi/event.h"
#include "improvise/modes/frame.h"
#include "improvise/recognition/chord_recognizer.h"
#include "improvise/theory/progression.h"
#include "improvise/theory/scale.h"

namespace improvise::modes {

enum class Mode { GuidedPress, RollingImprov, OnwaitRoll, ExpertPress };
enum class ApproachKind { HalfStep, ScaleAbove, Both };
enum class PressClass { ChordToneHit, ApproachHit, ProgressionHit, OutOfSet, Early, Late };

inline constexpr std::array kAllPressClasses{PressClass::ChordToneHit, PressClass::ApproachHit,
                                             PressClass::ProgressionHit, PressClass::OutOfSet,
                                             PressClass::Early,          PressClass::Late};

std::string_view mode_name(Mode m);
std::optional<Mode> parse_mode(std::string_view name);
std::string_view approach_kind_name(ApproachKind k);
std::optional<ApproachKind> parse_approach_kind(std::string_view name);
std::string_view press_class_name(PressClass c);
std::optional<PressClass> parse_press_class(std::string_view name);

struct ModeConfig {
  Mode mode = Mode::GuidedPress;
  bool approaches_on = false;
  ApproachKind approach_kind = ApproachKind::HalfStep;
  Pitch split_pitch{60};
  double hit_window_ms = 100.0;
  double lookahead_beats = 4.0;
  int required_hits = 1;            ///< OnWait presses needed per chord.
  bool gate_on_approaches = false;  ///< OnWait also accepts approach notes.

  friend bool operator==(const ModeConfig&, const ModeConfig&) = default;
};

/// Throws Error(InvalidArgument) for a split outside the keyboard, a negative
/// hit window or lookahead, or required_hits < 1.
void validate(const ModeConfig& cfg);

ModeConfig set_mode(ModeConfig cfg, Mode mode);
ModeConfig toggle_approaches(ModeConfig cfg);

/// Approach pitch classes for a chord under the configured kind. Scale-above uses
/// the chord-scale, falling back to the key scale for chords the table leaves unmapped.
theory::PitchClassSet approach_set(const Chord& chord, const theory::Key& key, const ModeConfig& cfg);

/// The octave directly below the split, clipped to the keyboard, where progression keys light up.
std::pair<int, int> comping_register(const ModeConfig& cfg);

/// Index of the chord sounding at `tick`, if any.
std::optional<std::size_t> chord_index_at(std::span<const theory::TimedChord> realized, std::int64_t tick);

/// Guided Press: static colors for chord `index`; frame_tick is the chord's start.
/// Throws Error(InvalidArgument) if index is out of range.
HighlightFrame guided_press_frame(std::span<const theory::TimedChord> realized, std::size_t index,
                                  const theory::Key& key, const ModeConfig& cfg);

/// Rolling Improv at the transport position: falling yellow notes for every chord
/// starting within the lookahead (inclusive), and the colors of the sounding chord.
HighlightFrame rolling_frame(std::span<const theory::TimedChord> realized, const clock::Transport& t,
                             const theory::Key& key, const ModeConfig& cfg);

/// Same rendering at an explicit position and beat length.
HighlightFrame roll_frame_at(std::span<const theory::TimedChord> realized, std::int64_t position,
                             std::int64_t ticks_per_beat, const theory::Key& key, const ModeConfig& cfg);

/// @brief OnWait Roll progress: the roll is parked on chord `index` until it is played.
struct OnWaitState {
  std::vector<theory::TimedChord> realized;
  std::size_t index = 0;  ///< realized.size() once every chord is done.
  int hits = 0;
  std::int64_t ticks_per_beat = clock::kDefaultPpq;

  bool finished() const { return index >= realized.size(); }
  std::int64_t position() const;

  friend bool operator==(const OnWaitState&, const OnWaitState&) = default;
};

HighlightFrame onwait_frame(const OnWaitState& state, const theory::Key& key, const ModeConfig& cfg);

/// Counts a note_on above the split in the active chord's tone set (or approach set when
/// gated on approaches); anything else leaves the state untouched.
std::pair<OnWaitState, HighlightFrame> onwait_step(OnWaitState state, const midi::MidiEvent& event,
                                                   const theory::Key& key, const ModeConfig& cfg);

/// Expert Press: recognizes the held notes at or below the split and lights that chord from the split up.
HighlightFrame expert_press_step(const recognition::HeldNotes& held, const ModeConfig& cfg, const theory::Key& key,
                                 std::int64_t frame_tick = 0);

struct Classification {
  PressClass press = PressClass::OutOfSet;
  /// Signed press time minus target time, set when the press had a yellow timing target.
  std::optional<double> timing_error_ms;

  friend bool operator==(const Classification&, const Classification&) = default;
};

/// The pressed key's color decides the class. In Rolling Improv a press on a yellow
/// target is judged against the nearest target time: inside the hit window it is a
/// progression hit, otherwise early or late.
Classification classify_press_timed(const midi::MidiEvent& event, const HighlightFrame& frame,
                                    const clock::Transport& t, const ModeConfig& cfg);

PressClass classify_press(const midi::MidiEvent& event, const HighlightFrame& frame, const clock::Transport& t,
                          const ModeConfig& cfg);

}  // namespace improvise::modes
