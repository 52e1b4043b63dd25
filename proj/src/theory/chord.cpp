#include "improvise/theory/chord.h"

namespace improvise::theory {

namespace {

struct QualityInfo {
  ChordQuality quality;
  std::string_view name;
  std::string_view suffix;
  std::array<int, 4> offsets;
  std::size_t size;
};

constexpr std::array<QualityInfo, 9> kQualities = {{
    {ChordQuality::Maj7, "maj7", "maj7", {0, 4, 7, 11}, 4},
    {ChordQuality::Min7, "min7", "m7", {0, 3, 7, 10}, 4},
    {ChordQuality::Dom7, "dom7", "7", {0, 4, 7, 10}, 4},
    {ChordQuality::Min7b5, "min7b5", "m7b5", {0, 3, 6, 10}, 4},
    {ChordQuality::Dim7, "dim7", "dim7", {0, 3, 6, 9}, 4},
    {ChordQuality::Maj6, "maj6", "6", {0, 4, 7, 9}, 4},
    {ChordQuality::Min6, "min6", "m6", {0, 3, 7, 9}, 4},
    {ChordQuality::TriadMaj, "triad_maj", "", {0, 4, 7, 0}, 3},
    {ChordQuality::TriadMin, "triad_min", "m", {0, 3, 7, 0}, 3},
}};

const QualityInfo& info(ChordQuality q) { return kQualities[static_cast<std::size_t>(q)]; }

}  // namespace

std::span<const int> quality_template(ChordQuality quality) {
  const auto& i = info(quality);
  return {i.offsets.data(), i.size};
}

std::string_view quality_name(ChordQuality quality) { return info(quality).name; }

std::string_view quality_suffix(ChordQuality quality) { return info(quality).suffix; }

std::optional<ChordQuality> parse_quality(std::string_view name) {
  for (const auto& i : kQualities) {
    if (i.name == name) return i.quality;
  }
  return std::nullopt;
}

PitchClassSet chord_tones(const Chord& chord) {
  PitchClassSet tones;
  for (int offset : quality_template(chord.quality)) tones.insert(chord.root.transposed(offset));
  return tones;
}

std::string chord_name(const Chord& chord) {
  return std::string(pitch_class_name(chord.root)) + std::string(quality_suffix(chord.quality));
}

}  // namespace improvise::theory
