#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "improvise/midi/event.h"

namespace improvise::midi {

struct MidiTrack {
  std::vector<MidiEvent> events;  ///< Absolute ticks, non-decreasing; last event is MetaEnd.

  friend bool operator==(const MidiTrack&, const MidiTrack&) = default;
};

struct MidiFile {
  int format = 1;  ///< 0 or 1.
  int ppq = 480;
  std::vector<MidiTrack> tracks;

  friend bool operator==(const MidiFile&, const MidiFile&) = default;
};

/// Default tempo when a file carries no tempo meta event (120 BPM).
inline constexpr std::uint32_t kDefaultTempoUs = 500000;

/// Parses a Standard MIDI File (formats 0 and 1, metrical time division).
///
/// Running status is honoured, note-on with velocity 0 becomes NoteOff, and
/// delta times are accumulated into absolute ticks. Unknown chunks are skipped.
/// Throws Error with code NotSmf, Truncated, UnsupportedTimeDivision,
/// UnsupportedFormat or MalformedTrack.
MidiFile parse_smf(std::span<const std::uint8_t> bytes);

/// Writes the file without running status. A missing end-of-track is appended.
/// Throws Error(InvalidArgument) if the file violates its invariants.
std::vector<std::uint8_t> serialize_smf(const MidiFile& file);

/// All events of all tracks ordered by tick (stable across tracks), without
/// end-of-track markers.
std::vector<MidiEvent> merged_events(const MidiFile& file);

/// First tempo in the file, or kDefaultTempoUs.
std::uint32_t first_tempo_us(const MidiFile& file);

/// Largest event tick across all tracks.
std::int64_t duration_ticks(const MidiFile& file);

}  // namespace improvise::midi
