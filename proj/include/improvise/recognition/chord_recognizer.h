#pragma once

#include <optional>
#include <span>
#include <vector>

#include "improvise/theory/chord.h"

namespace improvise::recognition {

using theory::Chord;
using theory::ChordQuality;
using theory::Pitch;

struct HeldNote {
  Pitch pitch;
  double onset_ms = 0.0;

  friend bool operator==(const HeldNote&, const HeldNote&) = default;
};

/// @brief The set of currently sounding keys, distinct by pitch.
class HeldNotes {
 public:
  HeldNotes() = default;
  HeldNotes(std::initializer_list<int> pitches);

  /// Re-pressing a held key keeps the original onset.
  void press(Pitch pitch, double onset_ms = 0.0);
  void release(Pitch pitch);
  void clear() { notes_.clear(); }

  bool contains(Pitch pitch) const;
  bool empty() const { return notes_.empty(); }
  std::size_t size() const { return notes_.size(); }

  /// Sorted by pitch ascending.
  const std::vector<HeldNote>& notes() const { return notes_; }
  theory::PitchClassSet pitch_classes() const;
  std::optional<Pitch> lowest() const;

  /// Only the notes strictly below `split`.
  HeldNotes below(Pitch split) const;

  friend bool operator==(const HeldNotes&, const HeldNotes&) = default;

 private:
  std::vector<HeldNote> notes_;
};

/// All (root, quality) pairs among `qualities` whose chord tones equal `pcs`,
/// ordered by root then quality.
std::vector<Chord> chord_candidates(theory::PitchClassSet pcs,
                                    std::span<const ChordQuality> qualities = theory::kAllQualities);

/// @brief Names the chord formed by the held keys, regardless of voicing.
///
/// Needs at least three distinct pitch classes that exactly match one chord
/// template. When several chords share the pitch-class set (Dm7 / F6, the four
/// rotations of a dim7), the one rooted on the lowest held note wins, then the
/// numerically smallest root.
std::optional<Chord> recognize_chord(const HeldNotes& held,
                                     std::span<const ChordQuality> qualities = theory::kAllQualities);

}  // namespace improvise::recognition
