#include "improvise/theory/approaches.h"

#include <algorithm>

#include "improvise/error.h"

namespace improvise::theory {

PitchClassSet half_step_approaches(const Chord& chord, HalfStepDirection direction) {
  const PitchClassSet tones = chord_tones(chord);
  const int step = direction == HalfStepDirection::Below ? -1 : 1;
  return tones.transposed(step).minus(tones);
}

PitchClassSet scale_above_approaches(const Chord& chord, const Scale& scale) {
  const PitchClassSet tones = chord_tones(chord);
  const PitchClassSet members = scale_set(scale);
  if (members.minus(tones).empty()) {
    throw Error(ErrorCode::InvalidArgument, "scale has no pitch class outside the chord");
  }

  PitchClassSet out;
  for (PitchClass tone : tones.to_vector()) {
    // A seven-note scale always has a member within 1..11 semitones above.
    for (int up = 1; up < 12; ++up) {
      const PitchClass candidate = tone.transposed(up);
      if (members.contains(candidate)) {
        out.insert(candidate);
        break;
      }
    }
  }
  return out.minus(tones);
}

const ChordScaleTable& ChordScaleTable::standard() {
  static const ChordScaleTable table({
      {ChordQuality::Min7, std::nullopt, Mode::Dorian},
      {ChordQuality::Dom7, std::nullopt, Mode::Mixolydian},
      {ChordQuality::Maj7, std::nullopt, Mode::Ionian},
      {ChordQuality::Min7b5, std::nullopt, Mode::Locrian},
      {ChordQuality::Maj6, std::nullopt, Mode::Ionian},
      {ChordQuality::TriadMaj, std::nullopt, Mode::Ionian},
      {ChordQuality::TriadMin, std::nullopt, Mode::Dorian},
  });
  return table;
}

void ChordScaleTable::set(ChordQuality quality, std::optional<Tonality> tonality, Mode mode) {
  auto it = std::find_if(entries_.begin(), entries_.end(), [&](const Entry& e) {
    return e.quality == quality && e.tonality == tonality;
  });
  if (it != entries_.end()) {
    it->mode = mode;
  } else {
    entries_.push_back({quality, tonality, mode});
  }
}

std::optional<Mode> ChordScaleTable::lookup(ChordQuality quality, Tonality tonality) const {
  std::optional<Mode> fallback;
  for (const auto& e : entries_) {
    if (e.quality != quality) continue;
    if (e.tonality == tonality) return e.mode;
    if (!e.tonality) fallback = e.mode;
  }
  return fallback;
}

Scale chord_scale(const Chord& chord, const Key& key, const ChordScaleTable& table) {
  const auto mode = table.lookup(chord.quality, key.tonality);
  if (!mode) {
    throw Error(ErrorCode::NoChordScale, "no chord-scale for " + chord_name(chord) + " in " + key_name(key));
  }
  return Scale{chord.root, *mode};
}

}  // namespace improvise::theory
