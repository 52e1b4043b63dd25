#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace improvise::theory {

/// @brief Pitch class in [0,11], C = 0. Always stored reduced modulo 12.
class PitchClass {
 public:
  constexpr PitchClass() = default;
  constexpr explicit PitchClass(int value) : value_(static_cast<std::uint8_t>(((value % 12) + 12) % 12)) {}

  constexpr int value() const { return value_; }

  constexpr PitchClass transposed(int semitones) const { return PitchClass(value_ + semitones); }

  /// Ascending interval in semitones from this pitch class to `other`, in [0,11].
  constexpr int interval_to(PitchClass other) const { return ((other.value_ - value_) % 12 + 12) % 12; }

  friend constexpr bool operator==(PitchClass, PitchClass) = default;
  friend constexpr auto operator<=>(PitchClass, PitchClass) = default;

 private:
  std::uint8_t value_ = 0;
};

/// @brief MIDI note number in [0,127].
class Pitch {
 public:
  static constexpr int kMin = 0;
  static constexpr int kMax = 127;

  constexpr Pitch() = default;
  /// Throws Error(InvalidArgument) when out of range.
  explicit Pitch(int number);

  constexpr int number() const { return number_; }
  constexpr PitchClass pitch_class() const { return PitchClass(number_); }
  /// Scientific octave: middle C (60) is octave 4.
  constexpr int octave() const { return number_ / 12 - 1; }

  friend constexpr bool operator==(Pitch, Pitch) = default;
  friend constexpr auto operator<=>(Pitch, Pitch) = default;

 private:
  std::uint8_t number_ = 60;
};

/// @brief Set of pitch classes as a 12-bit mask.
class PitchClassSet {
 public:
  constexpr PitchClassSet() = default;
  constexpr PitchClassSet(std::initializer_list<int> values) {
    for (int v : values) insert(PitchClass(v));
  }

  static constexpr PitchClassSet from_mask(std::uint16_t mask) {
    PitchClassSet s;
    s.mask_ = mask & kFull;
    return s;
  }

  constexpr void insert(PitchClass pc) { mask_ |= static_cast<std::uint16_t>(1u << pc.value()); }
  constexpr void erase(PitchClass pc) { mask_ &= static_cast<std::uint16_t>(~(1u << pc.value())); }
  constexpr bool contains(PitchClass pc) const { return (mask_ >> pc.value()) & 1u; }
  constexpr int size() const { return std::popcount(mask_); }
  constexpr bool empty() const { return mask_ == 0; }
  constexpr std::uint16_t mask() const { return mask_; }

  /// Rotates every member up by `semitones`.
  constexpr PitchClassSet transposed(int semitones) const {
    PitchClassSet out;
    for (int pc = 0; pc < 12; ++pc) {
      if ((mask_ >> pc) & 1u) out.insert(PitchClass(pc + semitones));
    }
    return out;
  }

  constexpr PitchClassSet operator|(PitchClassSet o) const { return from_mask(mask_ | o.mask_); }
  constexpr PitchClassSet operator&(PitchClassSet o) const { return from_mask(mask_ & o.mask_); }
  constexpr PitchClassSet minus(PitchClassSet o) const { return from_mask(mask_ & ~o.mask_); }

  /// Members in ascending numeric order.
  std::vector<PitchClass> to_vector() const;

  friend constexpr bool operator==(PitchClassSet, PitchClassSet) = default;

 private:
  static constexpr std::uint16_t kFull = 0x0FFF;
  std::uint16_t mask_ = 0;
};

/// Name with flats for the black keys commonly spelled flat in jazz charts (Db, Eb, Ab, Bb) and F#.
std::string_view pitch_class_name(PitchClass pc);

/// Accepts C, C#, Db, ... B, case-insensitive on the letter. Returns nullopt on anything else.
std::optional<PitchClass> parse_pitch_class(std::string_view name);

/// e.g. 60 -> "C4".
std::string pitch_name(Pitch p);

}  // namespace improvise::theory
