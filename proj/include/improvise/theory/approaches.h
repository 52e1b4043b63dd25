#pragma once

#include <optional>
#include <vector>

#include "improvise/theory/chord.h"
#include "improvise/theory/scale.h"

namespace improvise::theory {

enum class HalfStepDirection { Below, Above };

/// Chromatic neighbours of every chord tone, excluding pitch classes that are
/// themselves chord tones. Default direction is one semitone below.
PitchClassSet half_step_approaches(const Chord& chord,
                                   HalfStepDirection direction = HalfStepDirection::Below);

/// For each chord tone, the nearest scale member strictly above it; chord tones removed.
/// Throws Error(InvalidArgument) when every scale member is a chord tone.
PitchClassSet scale_above_approaches(const Chord& chord, const Scale& scale);

/// @brief Chord-quality to mode mapping used for chord-scale lookup.
///
/// Entries may be restricted to one tonality; an unrestricted entry applies to
/// both. Lookup prefers a tonality-specific entry.
class ChordScaleTable {
 public:
  struct Entry {
    ChordQuality quality;
    std::optional<Tonality> tonality;
    Mode mode;
  };

  /// min7 -> dorian, dom7 -> mixolydian, maj7 -> ionian, min7b5 -> locrian,
  /// plus maj6 and major triad -> ionian, minor triad -> dorian.
  static const ChordScaleTable& standard();

  ChordScaleTable() = default;
  explicit ChordScaleTable(std::vector<Entry> entries) : entries_(std::move(entries)) {}

  /// Adds or replaces the entry for (quality, tonality).
  void set(ChordQuality quality, std::optional<Tonality> tonality, Mode mode);

  std::optional<Mode> lookup(ChordQuality quality, Tonality tonality) const;

  const std::vector<Entry>& entries() const { return entries_; }

 private:
  std::vector<Entry> entries_;
};

/// Scale built on the chord root in the mode the table assigns to the chord quality.
/// Throws Error(NoChordScale) when the table has no entry for (quality, key tonality).
Scale chord_scale(const Chord& chord, const Key& key,
                  const ChordScaleTable& table = ChordScaleTable::standard());

}  // namespace improvise::theory
