#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "improvise/theory/pitch.h"

namespace improvise::theory {

enum class ChordQuality {
  Maj7,
  Min7,
  Dom7,
  Min7b5,
  Dim7,
  Maj6,
  Min6,
  TriadMaj,
  TriadMin,
};

inline constexpr std::array<ChordQuality, 9> kAllQualities = {
    ChordQuality::Maj7,   ChordQuality::Min7, ChordQuality::Dom7,
    ChordQuality::Min7b5, ChordQuality::Dim7, ChordQuality::Maj6,
    ChordQuality::Min6,   ChordQuality::TriadMaj, ChordQuality::TriadMin,
};

/// Semitone offsets from the root, strictly increasing, first offset 0.
std::span<const int> quality_template(ChordQuality quality);

/// Wire/config name: "maj7", "min7", "dom7", "min7b5", "dim7", "maj6", "min6", "triad_maj", "triad_min".
std::string_view quality_name(ChordQuality quality);
std::optional<ChordQuality> parse_quality(std::string_view name);

/// Chord-symbol suffix as printed after the root, e.g. "m7", "7", "maj7".
std::string_view quality_suffix(ChordQuality quality);

struct Chord {
  PitchClass root;
  ChordQuality quality = ChordQuality::Maj7;

  friend bool operator==(const Chord&, const Chord&) = default;
};

/// {(root + o) mod 12 | o in template}.
PitchClassSet chord_tones(const Chord& chord);

/// e.g. Dm7, G7, Cmaj7, Bm7b5.
std::string chord_name(const Chord& chord);

}  // namespace improvise::theory
