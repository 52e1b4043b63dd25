#include "improvise/modes/frame.h"

namespace improvise::modes {

std::string_view key_color_name(KeyColor c) {
  switch (c) {
    case KeyColor::Off:
      return "off";
    case KeyColor::ProgressionYellow:
      return "progression_yellow";
    case KeyColor::ChordTonePink:
      return "chord_tone_pink";
    case KeyColor::ApproachPurple:
      return "approach_purple";
  }
  return "off";
}

KeyColor HighlightFrame::color_of(Pitch pitch) const {
  const int n = pitch.number();
  if (n < kLowestKey || n > kHighestKey) return KeyColor::Off;
  return key_colors[static_cast<std::size_t>(n - kLowestKey)];
}

void HighlightFrame::set_color(Pitch pitch, KeyColor color) {
  const int n = pitch.number();
  if (n < kLowestKey || n > kHighestKey) return;
  key_colors[static_cast<std::size_t>(n - kLowestKey)] = color;
}

}  // namespace improvise::modes
