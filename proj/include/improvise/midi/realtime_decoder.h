#pragma once

#include <array>
#include <cstdint>
#include <optional>

#include "improvise/midi/event.h"

namespace improvise::midi {

/// @brief Incremental decoder for a live MIDI 1.0 byte stream.
///
/// One instance per input stream. Keeps running status across messages;
/// system real-time bytes (0xF8-0xFF) may appear anywhere without disturbing
/// a message being assembled. SysEx and system-common messages are consumed
/// and not emitted. Undefined status bytes and orphan data bytes are dropped
/// and counted.
class RealtimeDecoder {
 public:
  std::optional<MidiEvent> push(std::uint8_t byte);

  std::uint64_t skipped_bytes() const { return skipped_; }
  void reset();

 private:
  std::optional<MidiEvent> complete();

  std::uint8_t running_status_ = 0;
  std::array<std::uint8_t, 2> data_{};
  int have_ = 0;
  int system_common_remaining_ = 0;
  bool in_sysex_ = false;
  std::uint64_t skipped_ = 0;
};

}  // namespace improvise::midi
