#include "improvise/gateway/replay.h"

#include <algorithm>
#include <cmath>

#include "improvise/error.h"

namespace improvise::gateway {

curriculum::SessionReport replay(const midi::MidiFile& performance, const EngineSettings& settings,
                                 std::vector<curriculum::LessonSpec> lessons, const ReplayOptions& options,
                                 const ContentLibrary* library) {
  if (!(options.speed > 0.0) || !std::isfinite(options.speed)) {
    throw Error(ErrorCode::InvalidArgument, "speed must be positive");
  }
  EngineSettings s = settings;
  s.tempo_bpm = 60'000'000.0 / midi::first_tempo_us(performance) * options.speed;
  s.hit_window_ms = settings.hit_window_ms / options.speed;

  Engine engine(s, std::move(lessons), library);
  engine.handle(client::SelectLesson{options.lesson_id, options.exercise});
  engine.handle(client::Start{});

  const auto scaled = rescale(performance, engine.transport().ppq);
  for (const auto& e : midi::merged_events(scaled)) {
    if (!e.is_note()) continue;
    engine.advance_ticks(e.tick - engine.transport().position_tick);
    if (e.kind == midi::EventKind::NoteOn) {
      engine.handle(client::NoteOn{e.pitch(), e.velocity()});
    } else {
      engine.handle(client::NoteOff{e.pitch(), e.velocity()});
    }
  }
  engine.advance_ticks(std::max<std::int64_t>(0, midi::duration_ticks(scaled) - engine.transport().position_tick));
  engine.handle(client::Stop{});
  return *engine.last_report();
}

}  // namespace improvise::gateway
