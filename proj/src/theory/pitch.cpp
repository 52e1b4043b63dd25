#include "improvise/theory/pitch.h"

#include <cctype>

#include "improvise/error.h"

namespace improvise::theory {

namespace {

constexpr std::array<std::string_view, 12> kNames = {"C",  "Db", "D",  "Eb", "E",  "F",
                                                     "F#", "G",  "Ab", "A",  "Bb", "B"};

// Natural-letter pitch classes, A..G.
constexpr std::array<int, 7> kLetterPc = {9, 11, 0, 2, 4, 5, 7};

}  // namespace

Pitch::Pitch(int number) {
  if (number < kMin || number > kMax) {
    throw Error(ErrorCode::InvalidArgument, "MIDI pitch out of range: " + std::to_string(number));
  }
  number_ = static_cast<std::uint8_t>(number);
}

std::vector<PitchClass> PitchClassSet::to_vector() const {
  std::vector<PitchClass> out;
  out.reserve(static_cast<std::size_t>(size()));
  for (int pc = 0; pc < 12; ++pc) {
    if ((mask_ >> pc) & 1u) out.emplace_back(pc);
  }
  return out;
}

std::string_view pitch_class_name(PitchClass pc) { return kNames[static_cast<std::size_t>(pc.value())]; }

std::optional<PitchClass> parse_pitch_class(std::string_view name) {
  if (name.empty()) return std::nullopt;
  const char letter = static_cast<char>(std::toupper(static_cast<unsigned char>(name[0])));
  if (letter < 'A' || letter > 'G') return std::nullopt;
  int pc = kLetterPc[static_cast<std::size_t>(letter - 'A')];
  for (char accidental : name.substr(1)) {
    if (accidental == '#') {
      ++pc;
    } else if (accidental == 'b') {
      --pc;
    } else {
      return std::nullopt;
    }
  }
  return PitchClass(pc);
}

std::string pitch_name(Pitch p) {
  return std::string(pitch_class_name(p.pitch_class())) + std::to_string(p.octave());
}

}  // namespace improvise::theory
