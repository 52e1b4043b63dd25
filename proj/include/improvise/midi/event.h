#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace improvise::midi {

enum class EventKind {
  NoteOn,
  NoteOff,
  ControlChange,
  ProgramChange,
  MetaTempo,
  MetaEnd,
  Other,
};

std::string_view event_kind_name(EventKind kind);

/// @brief A channel or meta event with an absolute tick.
///
/// Note events use `data1` as the pitch and `data2` as the velocity. Control
/// changes use them as controller number and value; program changes use `data1`.
/// `Other` keeps the original status byte and raw data so unknown content
/// survives a parse/serialize round trip untouched.
struct MidiEvent {
  EventKind kind = EventKind::Other;
  std::uint8_t channel = 0;
  std::uint8_t data1 = 0;
  std::uint8_t data2 = 0;
  std::int64_t tick = 0;
  std::uint32_t tempo_us_per_quarter = 0;  ///< MetaTempo only.
  std::uint8_t status = 0;                 ///< Other only: 0xFF meta, 0xF0/0xF7 sysex, or a channel status.
  std::uint8_t meta_type = 0;              ///< Other meta events only.
  std::vector<std::uint8_t> payload;       ///< Other only.

  int pitch() const { return data1; }
  int velocity() const { return data2; }
  bool is_note() const { return kind == EventKind::NoteOn || kind == EventKind::NoteOff; }

  static MidiEvent note_on(int channel, int pitch, int velocity, std::int64_t tick = 0);
  static MidiEvent note_off(int channel, int pitch, int velocity = 0, std::int64_t tick = 0);
  static MidiEvent control_change(int channel, int controller, int value, std::int64_t tick = 0);
  static MidiEvent program_change(int channel, int program, std::int64_t tick = 0);
  static MidiEvent tempo(std::uint32_t us_per_quarter, std::int64_t tick = 0);
  static MidiEvent end_of_track(std::int64_t tick = 0);

  friend bool operator==(const MidiEvent&, const MidiEvent&) = default;
};

/// One-line human-readable description, used by the CLI dump.
std::string describe(const MidiEvent& event);

}  // namespace improvise::midi
