#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>

#include "improvise/theory/pitch.h"

namespace improvise::theory {

/// The seven diatonic modes, in rotation order of the major scale.
enum class Mode {
  Ionian,
  Dorian,
  Phrygian,
  Lydian,
  Mixolydian,
  Aeolian,
  Locrian,
};

inline constexpr std::array<Mode, 7> kAllModes = {
    Mode::Ionian,     Mode::Dorian,  Mode::Phrygian, Mode::Lydian,
    Mode::Mixolydian, Mode::Aeolian, Mode::Locrian,
};

std::string_view mode_name(Mode mode);
std::optional<Mode> parse_mode(std::string_view name);

struct Scale {
  PitchClass tonic;
  Mode mode = Mode::Ionian;

  friend bool operator==(const Scale&, const Scale&) = default;
};

/// Seven pitch classes starting at the tonic, following the mode's step pattern.
std::array<PitchClass, 7> scale_pitch_classes(const Scale& scale);

PitchClassSet scale_set(const Scale& scale);

/// Tonic of the ionian scale this mode is a rotation of (D dorian -> C).
PitchClass parent_ionian_tonic(const Scale& scale);

/// Index of `pc` within the scale (0 = tonic), or nullopt when not a member.
std::optional<int> scale_degree_of(const Scale& scale, PitchClass pc);

/// Diatonic step number of a pitch counted from the tonic below middle octaves,
/// monotone in pitch: moving up one scale step adds one. Nullopt when not diatonic.
std::optional<int> absolute_degree(const Scale& scale, int midi_pitch);

/// Inverse of absolute_degree.
int pitch_at_absolute_degree(const Scale& scale, int degree);

std::string scale_name(const Scale& scale);

enum class Tonality { Major, Minor };

struct Key {
  PitchClass tonic;
  Tonality tonality = Tonality::Major;

  friend bool operator==(const Key&, const Key&) = default;
};

/// Ionian for major keys, aeolian (natural minor) for minor keys.
Scale key_scale(const Key& key);

/// "C major", "A minor", "Bb major".
std::string key_name(const Key& key);

/// Accepts "<tonic> major|minor", "<tonic>m", or a bare tonic (major).
std::optional<Key> parse_key(std::string_view text);

}  // namespace improvise::theory
