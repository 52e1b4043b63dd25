#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "improvise/theory/chord.h"
#include "improvise/theory/scale.h"

namespace improvise::theory {

/// @brief Positive beat count as a reduced fraction (e.g. 3/2 beats).
struct Beats {
  std::int64_t num = 4;
  std::int64_t den = 1;

  friend bool operator==(const Beats&, const Beats&) = default;
};

struct ProgressionStep {
  int degree = 1;  ///< Scale degree 1-7 of the key.
  ChordQuality quality = ChordQuality::Maj7;
  Beats duration{4, 1};

  friend bool operator==(const ProgressionStep&, const ProgressionStep&) = default;
};

struct Progression {
  std::string name;
  std::vector<ProgressionStep> steps;

  friend bool operator==(const Progression&, const Progression&) = default;
};

/// @brief A chord placed on the tick timeline.
struct TimedChord {
  Chord chord;
  std::int64_t start_tick = 0;
  std::int64_t duration_ticks = 1;

  std::int64_t end_tick() const { return start_tick + duration_ticks; }

  friend bool operator==(const TimedChord&, const TimedChord&) = default;
};

/// One bar of 4/4 per chord unless stated otherwise.
inline constexpr Beats kDefaultStepBeats{4, 1};

/// ii-V-I in major: min7, dom7, maj7.
Progression two_five_one(Beats step = kDefaultStepBeats);
/// ii-V-I-VI with the VI as a dominant turnaround chord (A7 in C).
Progression two_five_one_six(Beats step = kDefaultStepBeats);
/// ii-V-i in minor: min7b5, dom7, min7.
Progression two_five_one_minor(Beats step = kDefaultStepBeats);
/// Single tonic minor-seventh chord, used for modal (dorian) practice.
Progression tonic_minor_vamp(Beats step = Beats{8, 1});

/// Looks up the presets above by name ("ii-V-I", "ii-V-I-VI", "ii-V-i", "i-vamp").
std::optional<Progression> preset_progression(std::string_view name);

/// Root of a scale degree (1-7) in the key's diatonic scale.
/// Throws Error(InvalidProgression) outside 1-7.
PitchClass degree_root(const Key& key, int degree);

/// Places each step on a contiguous tick timeline starting at 0.
/// Throws Error(InvalidProgression) for an empty progression, a degree outside 1-7,
/// a non-positive duration, or a duration that is not a whole number of ticks;
/// Error(InvalidArgument) when ppq <= 0.
std::vector<TimedChord> realize_progression(const Progression& progression, const Key& key, int ppq);

/// Total length in ticks of a realized progression (end of the last chord).
std::int64_t realized_length(const std::vector<TimedChord>& realized);

}  // namespace improvise::theory
