#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "improvise/midi/event.h"
#include "improvise/theory/pitch.h"
#include "improvise/theory/scale.h"

namespace improvise::recognition {

struct MotifNote {
  theory::Pitch pitch;
  std::int64_t onset_tick = 0;
  std::int64_t duration_ticks = 0;

  friend bool operator==(const MotifNote&, const MotifNote&) = default;
};

/// @brief A short melodic cell: at least two notes with strictly increasing onsets.
class Motif {
 public:
  /// Throws Error(InvalidMotif) when the invariants do not hold.
  explicit Motif(std::vector<MotifNote> notes);

  const std::vector<MotifNote>& notes() const { return notes_; }
  std::size_t size() const { return notes_.size(); }

  /// Copy with every onset moved by `ticks`.
  Motif shifted(std::int64_t ticks) const;

  friend bool operator==(const Motif&, const Motif&) = default;

 private:
  std::vector<MotifNote> notes_;
};

enum class RelationKind { Repeat, Sequence, RhythmicVariation, MelodicVariation, Unrelated };

std::string_view relation_name(RelationKind kind);

struct MotifRelation {
  RelationKind kind = RelationKind::Unrelated;
  int shift_degrees = 0;  ///< Non-zero for Sequence only.

  static MotifRelation sequence(int shift) { return {RelationKind::Sequence, shift}; }

  friend bool operator==(const MotifRelation&, const MotifRelation&) = default;
};

/// An eighth of a beat at 480 PPQ.
inline constexpr std::int64_t kDefaultTickTolerance = 60;

/// Same pitches, and onsets (relative to the first) and durations each within tolerance.
bool is_repeat(const Motif& a, const Motif& b, std::int64_t tick_tolerance);

/// Diatonic shift k != 0 that maps a onto b note for note, with matching rhythm.
/// Throws Error(NotDiatonic) if any pitch lies outside the scale.
std::optional<int> is_sequence(const Motif& a, const Motif& b, const theory::Scale& scale,
                               std::int64_t tick_tolerance);

/// Repeat, rhythmic or melodic variation, or unrelated. Sequences are not detected here.
MotifRelation classify_variation(const Motif& a, const Motif& b, std::int64_t tick_tolerance);

/// Same note count and inter-onset intervals within tolerance; pitches ignored.
bool rhythmic_match(const Motif& a, const Motif& b, std::int64_t tick_tolerance);

/// Boundaries between phrases in a live note stream.
struct SegmentationRule {
  std::int64_t min_rest_ticks = 480;  ///< A rest this long (one beat at 480 PPQ) ends the phrase.
  std::size_t max_notes = 16;
  int min_pitch = 0;                  ///< Notes below this pitch are ignored.
};

/// Pairs note_on/note_off events (ticks ascending) into notes and splits them
/// into phrases. Notes sharing an onset collapse to the highest one; notes left
/// sounding end at the last event tick.
std::vector<std::vector<MotifNote>> segment_phrases(std::span<const midi::MidiEvent> events,
                                                    const SegmentationRule& rule);

/// Phrases with at least two notes, as motifs.
std::vector<Motif> segment_motifs(std::span<const midi::MidiEvent> events, const SegmentationRule& rule);

}  // namespace improvise::recognition
