#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "improvise/theory/chord.h"

namespace improvise::modes {

using theory::Chord;
using theory::Pitch;

inline constexpr int kLowestKey = 21;
inline constexpr int kHighestKey = 108;
inline constexpr int kKeyCount = kHighestKey - kLowestKey + 1;

/// Wire values are the enumerator values.
enum class KeyColor : std::uint8_t { Off = 0, ProgressionYellow = 1, ChordTonePink = 2, ApproachPurple = 3 };

std::string_view key_color_name(KeyColor c);

struct FallingNote {
  Pitch pitch;
  std::int64_t hit_tick = 0;
  std::int64_t duration_ticks = 1;
  KeyColor color = KeyColor::ProgressionYellow;

  friend bool operator==(const FallingNote&, const FallingNote&) = default;
};

/// @brief Everything the keyboard display needs for one instant.
struct HighlightFrame {
  std::int64_t frame_tick = 0;
  std::array<KeyColor, kKeyCount> key_colors{};
  std::vector<FallingNote> falling;  ///< Sorted by hit_tick, then pitch.
  std::optional<Chord> active_chord;
  std::optional<std::int64_t> active_start_tick;

  /// Off for pitches outside the 88-key range.
  KeyColor color_of(Pitch pitch) const;
  void set_color(Pitch pitch, KeyColor color);

  friend bool operator==(const HighlightFrame&, const HighlightFrame&) = default;
};

}  // namespace improvise::modes
