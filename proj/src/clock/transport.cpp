#include "improvise/clock/transport.h"

#include <cmath>
#include <string>

#include "improvise/error.h"

namespace improvise::clock {

namespace {

void require_tempo(double bpm) {
  if (!(bpm > 0.0) || !std::isfinite(bpm)) {
    throw Error(ErrorCode::InvalidArgument, "tempo must be positive, got " + std::to_string(bpm));
  }
}

std::int64_t next_bar_line(const Transport& t) {
  const auto bar = t.ticks_per_bar();
  return (t.position_tick + bar - 1) / bar * bar;
}

}  // namespace

void validate(const Transport& t) {
  require_tempo(t.tempo_bpm);
  if (t.ppq <= 0) throw Error(ErrorCode::InvalidArgument, "ppq must be positive");
  if (t.time_signature.beats_per_bar <= 0) throw Error(ErrorCode::InvalidArgument, "beats per bar must be positive");
  const int unit = t.time_signature.beat_unit;
  if (unit != 2 && unit != 4 && unit != 8) throw Error(ErrorCode::InvalidArgument, "beat unit must be 2, 4 or 8");
  if (t.position_tick < 0) throw Error(ErrorCode::InvalidArgument, "position must be non-negative");
  if (t.pending_tempo_bpm) require_tempo(*t.pending_tempo_bpm);
}

double tick_to_ms(const Transport& t, std::int64_t tick) {
  return static_cast<double>(tick) * (60000.0 / t.tempo_bpm) / t.ppq;
}

double ms_to_ticks(const Transport& t, double ms) { return ms * t.tempo_bpm * t.ppq / 60000.0; }

Transport advance(Transport t, double elapsed_ms) {
  if (elapsed_ms < 0.0 || !std::isfinite(elapsed_ms)) {
    throw Error(ErrorCode::InvalidArgument, "elapsed time must be non-negative");
  }
  if (!t.running || elapsed_ms == 0.0) return t;

  if (t.pending_tempo_bpm) {
    const auto bar_line = next_bar_line(t);
    const double ms_to_bar = tick_to_ms(t, bar_line - t.position_tick);
    if (elapsed_ms >= ms_to_bar) {
      t.position_tick = bar_line;
      t.tempo_bpm = *t.pending_tempo_bpm;
      t.pending_tempo_bpm.reset();
      elapsed_ms -= ms_to_bar;
    }
  }
  t.position_tick += std::llround(ms_to_ticks(t, elapsed_ms));
  return t;
}

Transport request_tempo(Transport t, double tempo_bpm) {
  require_tempo(tempo_bpm);
  if (!t.running || t.position_tick % t.ticks_per_bar() == 0) {
    t.tempo_bpm = tempo_bpm;
    t.pending_tempo_bpm.reset();
  } else {
    t.pending_tempo_bpm = tempo_bpm;
  }
  return t;
}

std::vector<Click> metronome_events(const Transport& t, int bars) {
  if (bars < 1) throw Error(ErrorCode::InvalidArgument, "metronome needs at least one bar");
  return clicks_between(t, 0, t.ticks_per_bar() * bars);
}

std::vector<Click> clicks_between(const Transport& t, std::int64_t from, std::int64_t to) {
  std::vector<Click> out;
  const auto beat = t.ticks_per_beat();
  const auto bar = t.ticks_per_bar();
  if (beat <= 0 || to <= from) return out;
  auto first = from >= 0 ? (from + beat - 1) / beat * beat : -((-from) / beat) * beat;
  for (auto tick = first; tick < to; tick += beat) {
    out.push_back({tick, ((tick % bar) + bar) % bar == 0});
  }
  return out;
}

}  // namespace improvise::clock
