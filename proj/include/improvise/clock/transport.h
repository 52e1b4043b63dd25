#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace improvise::clock {

/// Engine-wide tick resolution.
inline constexpr int kDefaultPpq = 480;

struct TimeSignature {
  int beats_per_bar = 4;
  int beat_unit = 4;  ///< 2, 4 or 8.

  friend bool operator==(const TimeSignature&, const TimeSignature&) = default;
};

/// @brief Musical clock state. Tempo is in quarter notes per minute.
///
/// Owned by the engine loop; everything else sees copies. A tempo change
/// requested while running is held in `pending_tempo_bpm` and takes effect at
/// the next bar line.
struct Transport {
  double tempo_bpm = 120.0;
  int ppq = kDefaultPpq;
  bool running = false;
  std::int64_t position_tick = 0;
  TimeSignature time_signature;
  std::optional<double> pending_tempo_bpm;

  std::int64_t ticks_per_beat() const { return std::int64_t{ppq} * 4 / time_signature.beat_unit; }
  std::int64_t ticks_per_bar() const { return ticks_per_beat() * time_signature.beats_per_bar; }

  friend bool operator==(const Transport&, const Transport&) = default;
};

/// Throws Error(InvalidArgument) unless tempo > 0, ppq > 0, beats_per_bar > 0,
/// beat_unit in {2,4,8} and position >= 0.
void validate(const Transport& transport);

/// tick * (60000 / tempo) / ppq. Works for tick deltas of either sign.
double tick_to_ms(const Transport& transport, std::int64_t tick);
double ms_to_ticks(const Transport& transport, double ms);

/// Moves a running transport forward by round(elapsed * tempo * ppq / 60000)
/// ticks, switching to a pending tempo at the first bar line crossed.
/// A stopped transport is returned unchanged. Throws Error(InvalidArgument)
/// for negative elapsed time.
Transport advance(Transport transport, double elapsed_ms);

/// Applies immediately when stopped or exactly on a bar line, otherwise at the next bar line.
/// Throws Error(InvalidArgument) for a non-positive tempo.
Transport request_tempo(Transport transport, double tempo_bpm);

struct Click {
  std::int64_t tick = 0;
  bool accent = false;  ///< First beat of the bar.

  friend bool operator==(const Click&, const Click&) = default;
};

/// One click per beat for `bars` bars from tick 0. Throws Error(InvalidArgument) if bars < 1.
std::vector<Click> metronome_events(const Transport& transport, int bars);

/// Clicks with from <= tick < to on the transport's beat grid.
std::vector<Click> clicks_between(const Transport& transport, std::int64_t from, std::int64_t to);

}  // namespace improvise::clock
