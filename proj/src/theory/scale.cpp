#include "improvise/theory/scale.h"

#include <algorithm>
#include <cctype>

namespace improvise::theory {

namespace {

constexpr std::array<int, 7> kIonianOffsets = {0, 2, 4, 5, 7, 9, 11};

constexpr std::array<std::string_view, 7> kModeNames = {
    "ionian", "dorian", "phrygian", "lydian", "mixolydian", "aeolian", "locrian",
};

// Semitone offsets from the tonic for a mode, ascending within one octave.
std::array<int, 7> mode_offsets(Mode mode) {
  const auto m = static_cast<std::size_t>(mode);
  std::array<int, 7> out{};
  for (std::size_t i = 0; i < 7; ++i) {
    out[i] = ((kIonianOffsets[(m + i) % 7] - kIonianOffsets[m]) % 12 + 12) % 12;
  }
  return out;
}

int floor_div(int a, int b) {
  int q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

}  // namespace

std::string_view mode_name(Mode mode) { return kModeNames[static_cast<std::size_t>(mode)]; }

std::optional<Mode> parse_mode(std::string_view name) {
  const std::string n = lower(name);
  for (std::size_t i = 0; i < kModeNames.size(); ++i) {
    if (kModeNames[i] == n) return static_cast<Mode>(i);
  }
  return std::nullopt;
}

std::array<PitchClass, 7> scale_pitch_classes(const Scale& scale) {
  const auto offsets = mode_offsets(scale.mode);
  std::array<PitchClass, 7> out{};
  for (std::size_t i = 0; i < 7; ++i) out[i] = scale.tonic.transposed(offsets[i]);
  return out;
}

PitchClassSet scale_set(const Scale& scale) {
  PitchClassSet s;
  for (auto pc : scale_pitch_classes(scale)) s.insert(pc);
  return s;
}

PitchClass parent_ionian_tonic(const Scale& scale) {
  return scale.tonic.transposed(-kIonianOffsets[static_cast<std::size_t>(scale.mode)]);
}

std::optional<int> scale_degree_of(const Scale& scale, PitchClass pc) {
  const auto offsets = mode_offsets(scale.mode);
  const int rel = scale.tonic.interval_to(pc);
  for (std::size_t i = 0; i < 7; ++i) {
    if (offsets[i] == rel) return static_cast<int>(i);
  }
  return std::nullopt;
}

std::optional<int> absolute_degree(const Scale& scale, int midi_pitch) {
  const int rel = midi_pitch - scale.tonic.value();
  const int octave = floor_div(rel, 12);
  const auto degree = scale_degree_of(scale, PitchClass(midi_pitch));
  if (!degree) return std::nullopt;
  return octave * 7 + *degree;
}

int pitch_at_absolute_degree(const Scale& scale, int degree) {
  const auto offsets = mode_offsets(scale.mode);
  const int octave = floor_div(degree, 7);
  const int within = degree - octave * 7;
  return scale.tonic.value() + octave * 12 + offsets[static_cast<std::size_t>(within)];
}

std::string scale_name(const Scale& scale) {
  return std::string(pitch_class_name(scale.tonic)) + " " + std::string(mode_name(scale.mode));
}

Scale key_scale(const Key& key) {
  return Scale{key.tonic, key.tonality == Tonality::Major ? Mode::Ionian : Mode::Aeolian};
}

std::string key_name(const Key& key) {
  return std::string(pitch_class_name(key.tonic)) + (key.tonality == Tonality::Major ? " major" : " minor");
}

std::optional<Key> parse_key(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) return std::nullopt;

  const auto space = text.find_first_of(" _:");
  std::string_view tonic_part = text.substr(0, space);
  std::string_view rest = space == std::string_view::npos ? std::string_view{} : text.substr(space + 1);

  Tonality tonality = Tonality::Major;
  if (rest.empty() && tonic_part.size() > 1 && tonic_part.back() == 'm') {
    tonic_part.remove_suffix(1);
    tonality = Tonality::Minor;
  } else if (!rest.empty()) {
    const std::string r = lower(rest);
    if (r == "major" || r == "maj") {
      tonality = Tonality::Major;
    } else if (r == "minor" || r == "min") {
      tonality = Tonality::Minor;
    } else {
      return std::nullopt;
    }
  }
  const auto tonic = parse_pitch_class(tonic_part);
  if (!tonic) return std::nullopt;
  return Key{*tonic, tonality};
}

}  // namespace improvise::theory
