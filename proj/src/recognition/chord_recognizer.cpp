#include "improvise/recognition/chord_recognizer.h"

#include <algorithm>

namespace improvise::recognition {

HeldNotes::HeldNotes(std::initializer_list<int> pitches) {
  for (int p : pitches) press(Pitch(p));
}

void HeldNotes::press(Pitch pitch, double onset_ms) {
  auto it = std::lower_bound(notes_.begin(), notes_.end(), pitch,
                             [](const HeldNote& n, Pitch p) { return n.pitch < p; });
  if (it != notes_.end() && it->pitch == pitch) return;
  notes_.insert(it, HeldNote{pitch, onset_ms});
}

void HeldNotes::release(Pitch pitch) {
  std::erase_if(notes_, [&](const HeldNote& n) { return n.pitch == pitch; });
}

bool HeldNotes::contains(Pitch pitch) const {
  return std::any_of(notes_.begin(), notes_.end(), [&](const HeldNote& n) { return n.pitch == pitch; });
}

theory::PitchClassSet HeldNotes::pitch_classes() const {
  theory::PitchClassSet s;
  for (const auto& n : notes_) s.insert(n.pitch.pitch_class());
  return s;
}

std::optional<Pitch> HeldNotes::lowest() const {
  if (notes_.empty()) return std::nullopt;
  return notes_.front().pitch;
}

HeldNotes HeldNotes::below(Pitch split) const {
  HeldNotes out;
  for (const auto& n : notes_) {
    if (n.pitch < split) out.notes_.push_back(n);
  }
  return out;
}

std::vector<Chord> chord_candidates(theory::PitchClassSet pcs, std::span<const ChordQuality> qualities) {
  std::vector<Chord> out;
  for (int root = 0; root < 12; ++root) {
    if (!pcs.contains(theory::PitchClass(root))) continue;
    for (auto q : qualities) {
      const Chord c{theory::PitchClass(root), q};
      if (theory::chord_tones(c) == pcs) out.push_back(c);
    }
  }
  return out;
}

std::optional<Chord> recognize_chord(const HeldNotes& held, std::span<const ChordQuality> qualities) {
  const auto pcs = held.pitch_classes();
  if (pcs.size() < 3) return std::nullopt;
  const auto candidates = chord_candidates(pcs, qualities);
  if (candidates.empty()) return std::nullopt;
  const auto bass = held.lowest()->pitch_class();
  for (const auto& c : candidates) {
    if (c.root == bass) return c;
  }
  return candidates.front();
}

}  // namespace improvise::recognition
