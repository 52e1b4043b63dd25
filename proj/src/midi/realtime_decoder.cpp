#include "improvise/midi/realtime_decoder.h"

namespace improvise::midi {

namespace {

int data_length(std::uint8_t status) {
  const auto type = status & 0xF0;
  return (type == 0xC0 || type == 0xD0) ? 1 : 2;
}

int system_common_length(std::uint8_t status) {
  switch (status) {
    case 0xF1:
    case 0xF3:
      return 1;
    case 0xF2:
      return 2;
    default:
      return 0;  // 0xF6 tune request
  }
}

}  // namespace

void RealtimeDecoder::reset() {
  running_status_ = 0;
  have_ = 0;
  system_common_remaining_ = 0;
  in_sysex_ = false;
}

std::optional<MidiEvent> RealtimeDecoder::push(std::uint8_t byte) {
  if (byte >= 0xF8) {
    // Real-time messages are transparent. 0xF9 and 0xFD are undefined.
    if (byte == 0xF9 || byte == 0xFD) ++skipped_;
    return std::nullopt;
  }

  if (byte & 0x80) {
    have_ = 0;
    system_common_remaining_ = 0;
    in_sysex_ = false;
    if (byte < 0xF0) {
      running_status_ = byte;
      return std::nullopt;
    }
    running_status_ = 0;  // system common cancels running status
    switch (byte) {
      case 0xF0:
        in_sysex_ = true;
        break;
      case 0xF7:
        break;
      case 0xF1:
      case 0xF2:
      case 0xF3:
      case 0xF6:
        system_common_remaining_ = system_common_length(byte);
        break;
      default:
        ++skipped_;  // 0xF4, 0xF5
        break;
    }
    return std::nullopt;
  }

  if (in_sysex_) return std::nullopt;
  if (system_common_remaining_ > 0) {
    --system_common_remaining_;
    return std::nullopt;
  }
  if (running_status_ == 0) {
    ++skipped_;
    return std::nullopt;
  }

  data_[static_cast<std::size_t>(have_++)] = byte;
  if (have_ < data_length(running_status_)) return std::nullopt;
  have_ = 0;
  return complete();
}

std::optional<MidiEvent> RealtimeDecoder::complete() {
  const int ch = running_status_ & 0x0F;
  const std::uint8_t d1 = data_[0];
  const std::uint8_t d2 = data_[1];
  switch (running_status_ & 0xF0) {
    case 0x90:
      return MidiEvent::note_on(ch, d1, d2);
    case 0x80:
      return MidiEvent::note_off(ch, d1, d2);
    case 0xB0:
      return MidiEvent::control_change(ch, d1, d2);
    case 0xC0:
      return MidiEvent::program_change(ch, d1);
    default: {
      MidiEvent e;
      e.kind = EventKind::Other;
      e.status = running_status_;
      e.channel = static_cast<std::uint8_t>(ch);
      e.payload.push_back(d1);
      if (data_length(running_status_) == 2) e.payload.push_back(d2);
      return e;
    }
  }
}

}  // namespace improvise::midi
