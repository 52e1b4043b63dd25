#include "improvise/midi/event.h"

#include <cstdio>

namespace improvise::midi {

namespace {

std::uint8_t clamp7(int v) { return static_cast<std::uint8_t>(v & 0x7F); }
std::uint8_t clamp4(int v) { return static_cast<std::uint8_t>(v & 0x0F); }

}  // namespace

std::string_view event_kind_name(EventKind kind) {
  switch (kind) {
    case EventKind::NoteOn:
      return "note_on";
    case EventKind::NoteOff:
      return "note_off";
    case EventKind::ControlChange:
      return "control_change";
    case EventKind::ProgramChange:
      return "program_change";
    case EventKind::MetaTempo:
      return "meta_tempo";
    case EventKind::MetaEnd:
      return "meta_end";
    case EventKind::Other:
      return "other";
  }
  return "other";
}

MidiEvent MidiEvent::note_on(int channel, int pitch, int velocity, std::int64_t tick) {
  MidiEvent e;
  e.kind = velocity == 0 ? EventKind::NoteOff : EventKind::NoteOn;
  e.channel = clamp4(channel);
  e.data1 = clamp7(pitch);
  e.data2 = clamp7(velocity);
  e.tick = tick;
  return e;
}

MidiEvent MidiEvent::note_off(int channel, int pitch, int velocity, std::int64_t tick) {
  MidiEvent e;
  e.kind = EventKind::NoteOff;
  e.channel = clamp4(channel);
  e.data1 = clamp7(pitch);
  e.data2 = clamp7(velocity);
  e.tick = tick;
  return e;
}

MidiEvent MidiEvent::control_change(int channel, int controller, int value, std::int64_t tick) {
  MidiEvent e;
  e.kind = EventKind::ControlChange;
  e.channel = clamp4(channel);
  e.data1 = clamp7(controller);
  e.data2 = clamp7(value);
  e.tick = tick;
  return e;
}

MidiEvent MidiEvent::program_change(int channel, int program, std::int64_t tick) {
  MidiEvent e;
  e.kind = EventKind::ProgramChange;
  e.channel = clamp4(channel);
  e.data1 = clamp7(program);
  e.tick = tick;
  return e;
}

MidiEvent MidiEvent::tempo(std::uint32_t us_per_quarter, std::int64_t tick) {
  MidiEvent e;
  e.kind = EventKind::MetaTempo;
  e.tempo_us_per_quarter = us_per_quarter & 0xFFFFFF;
  e.tick = tick;
  return e;
}

MidiEvent MidiEvent::end_of_track(std::int64_t tick) {
  MidiEvent e;
  e.kind = EventKind::MetaEnd;
  e.tick = tick;
  return e;
}

std::string describe(const MidiEvent& e) {
  char buf[128];
  switch (e.kind) {
    case EventKind::NoteOn:
    case EventKind::NoteOff:
      std::snprintf(buf, sizeof buf, "%8lld  %-14s ch=%-2d pitch=%-3d vel=%d", static_cast<long long>(e.tick),
                    event_kind_name(e.kind).data(), e.channel, e.data1, e.data2);
      break;
    case EventKind::ControlChange:
      std::snprintf(buf, sizeof buf, "%8lld  %-14s ch=%-2d cc=%-3d value=%d", static_cast<long long>(e.tick),
                    "control_change", e.channel, e.data1, e.data2);
      break;
    case EventKind::ProgramChange:
      std::snprintf(buf, sizeof buf, "%8lld  %-14s ch=%-2d program=%d", static_cast<long long>(e.tick),
                    "program_change", e.channel, e.data1);
      break;
    case EventKind::MetaTempo:
      std::snprintf(buf, sizeof buf, "%8lld  %-14s us_per_quarter=%u (%.2f bpm)", static_cast<long long>(e.tick),
                    "meta_tempo", e.tempo_us_per_quarter,
                    e.tempo_us_per_quarter ? 60000000.0 / e.tempo_us_per_quarter : 0.0);
      break;
    case EventKind::MetaEnd:
      std::snprintf(buf, sizeof buf, "%8lld  %-14s", static_cast<long long>(e.tick), "meta_end");
      break;
    case EventKind::Other:
      std::snprintf(buf, sizeof buf, "%8lld  %-14s status=0x%02X meta=0x%02X bytes=%zu",
                    static_cast<long long>(e.tick), "other", e.status, e.meta_type, e.payload.size());
      break;
  }
  return buf;
}

}  // namespace improvise::midi
