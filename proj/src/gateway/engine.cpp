#include "improvise/gateway/engine.h"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "improvise/curriculum/performance.h"
#include "improvise/error.h"

namespace improvise::gateway {

namespace {

constexpr int kEnginePpq = clock::kDefaultPpq;
constexpr int kDefaultVelocity = 100;

std::int64_t scale_tick(std::int64_t tick, int from_ppq, int to_ppq) {
  if (from_ppq == to_ppq) return tick;
  return std::llround(static_cast<double>(tick) * to_ppq / from_ppq);
}

std::uint32_t tempo_us(double bpm) { return static_cast<std::uint32_t>(std::llround(60'000'000.0 / bpm)); }

bool is_channel_event(const midi::MidiEvent& e) {
  return e.kind == midi::EventKind::NoteOn || e.kind == midi::EventKind::NoteOff ||
         e.kind == midi::EventKind::ControlChange || e.kind == midi::EventKind::ProgramChange;
}

bool plays_time(modes::Mode mode) { return mode != modes::Mode::OnwaitRoll; }

}  // namespace

EngineSettings EngineSettings::from_config(const Config& config) {
  validate(config);
  return {config.key(), config.default_tempo_bpm, config.swing_ratio, config.split_pitch, config.hit_window_ms};
}

midi::MidiFile rescale(const midi::MidiFile& file, int ppq) {
  if (ppq <= 0) throw Error(ErrorCode::InvalidArgument, "ppq must be positive");
  midi::MidiFile out = file;
  out.ppq = ppq;
  for (auto& track : out.tracks) {
    for (auto& e : track.events) e.tick = scale_tick(e.tick, file.ppq, ppq);
  }
  return out;
}

Engine::Engine(EngineSettings settings, std::vector<curriculum::LessonSpec> lessons, const ContentLibrary* library)
    : settings_(settings), lessons_(std::move(lessons)), library_(library), key_(settings.key) {
  cfg_.split_pitch = theory::Pitch{settings_.split_pitch};
  cfg_.hit_window_ms = settings_.hit_window_ms;
  modes::validate(cfg_);
  swing_ = {settings_.swing_ratio, clock::Subdivision::Eighth};
  clock::validate(swing_);
  transport_.tempo_bpm = settings_.tempo_bpm;
  clock::validate(transport_);
  set_progression(theory::two_five_one(), key_);
}

std::vector<ServerMessage> Engine::handle(const ClientMessage& message) {
  return std::visit([this](const auto& m) { return on(m); }, message);
}

void Engine::set_progression(const theory::Progression& progression, const theory::Key& key) {
  cycle_ = theory::realize_progression(progression, key, kEnginePpq);
  cycle_length_ = theory::realized_length(cycle_);
  reset_onwait();
}

void Engine::reset_onwait() {
  onwait_offset_ = 0;
  onwait_ = {cycle_, 0, 0, transport_.ticks_per_beat()};
}

std::vector<theory::TimedChord> Engine::window(std::int64_t position) const {
  const std::int64_t first = std::max<std::int64_t>(0, position) / cycle_length_;
  const auto lookahead =
      static_cast<std::int64_t>(std::ceil(cfg_.lookahead_beats * static_cast<double>(transport_.ticks_per_beat())));
  const std::int64_t last = first + lookahead / cycle_length_ + 1;
  std::vector<theory::TimedChord> out;
  for (std::int64_t k = first; k <= last; ++k) {
    for (auto c : cycle_) {
      c.start_tick += k * cycle_length_;
      out.push_back(c);
    }
  }
  return out;
}

modes::HighlightFrame Engine::render() const {
  const std::int64_t pos = transport_.position_tick;
  switch (cfg_.mode) {
    case modes::Mode::GuidedPress: {
      const auto realized = window(pos);
      const auto index = modes::chord_index_at(realized, pos).value_or(0);
      auto frame = modes::guided_press_frame(realized, index, key_, cfg_);
      frame.frame_tick = pos;
      return frame;
    }
    case modes::Mode::RollingImprov:
      return modes::roll_frame_at(window(pos), pos, transport_.ticks_per_beat(), key_, cfg_);
    case modes::Mode::OnwaitRoll:
      return modes::onwait_frame(onwait_, key_, cfg_);
    case modes::Mode::ExpertPress:
      return modes::expert_press_step(held_, cfg_, key_, pos);
  }
  throw Error(ErrorCode::InvalidArgument, "unknown mode");
}

server::SessionState Engine::state() const {
  server::SessionState s;
  s.mode = cfg_.mode;
  s.lesson_id = lesson_id_;
  s.exercise = exercise_index_;
  s.running = transport_.running;
  s.tempo_bpm = transport_.tempo_bpm;
  s.swing = swing_;
  s.approaches_on = cfg_.approaches_on;
  s.approach_kind = cfg_.approach_kind;
  s.split_pitch = cfg_.split_pitch.number();
  s.key = theory::key_name(key_);
  s.content_id = content_id_;
  s.session = session_;
  return s;
}

server::Frame Engine::frame() const { return {render(), state()}; }

std::vector<ServerMessage> Engine::hello() const {
  server::LessonList lessons;
  for (const auto& l : lessons_) lessons.lessons.push_back(server::summarize(l));
  server::ContentList content;
  if (library_ != nullptr) {
    content.content = library_->entries();
  } else {
    for (const auto& c : curriculum::builtin_content()) {
      content.content.push_back({c.id, c.id + ".mid", c.title, c.lesson_tags, c.file.ppq, midi::duration_ticks(c.file)});
    }
  }
  return {lessons, content, frame()};
}

std::vector<ServerMessage> Engine::on(const client::NoteOn& m) {
  if (m.velocity && *m.velocity == 0) return on(client::NoteOff{m.pitch, 0});
  const std::int64_t tick = transport_.position_tick;
  const auto event = midi::MidiEvent::note_on(0, m.pitch, m.velocity.value_or(kDefaultVelocity), tick);
  const auto before = render();
  const theory::Pitch pitch{m.pitch};
  held_.press(pitch, clock::tick_to_ms(transport_, tick));
  if (transport_.running) recorded_.push_back(event);

  std::vector<ServerMessage> out;
  const bool chord_input = cfg_.mode == modes::Mode::ExpertPress && m.pitch <= cfg_.split_pitch.number();
  if (!chord_input) {
    const auto c = modes::classify_press_timed(event, before, transport_, cfg_);
    if (transport_.running) classified_.push_back({event, c.press, c.timing_error_ms});
    out.push_back(server::PressClassMsg{m.pitch, tick, c.press, c.timing_error_ms});
  }
  if (cfg_.mode == modes::Mode::OnwaitRoll) {
    onwait_ = modes::onwait_step(onwait_, event, key_, cfg_).first;
    if (onwait_.finished()) {
      onwait_offset_ += cycle_length_;
      onwait_.realized = cycle_;
      for (auto& c : onwait_.realized) c.start_tick += onwait_offset_;
      onwait_.index = 0;
      onwait_.hits = 0;
    }
  }
  out.push_back(frame());
  return out;
}

std::vector<ServerMessage> Engine::on(const client::NoteOff& m) {
  held_.release(theory::Pitch{m.pitch});
  if (transport_.running) {
    recorded_.push_back(midi::MidiEvent::note_off(0, m.pitch, m.velocity.value_or(0), transport_.position_tick));
  }
  return {frame()};
}

std::vector<ServerMessage> Engine::on(const client::SetMode& m) {
  cfg_ = modes::set_mode(cfg_, m.mode);
  reset_onwait();
  return {frame()};
}

std::vector<ServerMessage> Engine::on(const client::ToggleApproaches& m) {
  cfg_ = modes::toggle_approaches(cfg_);
  if (m.kind) cfg_.approach_kind = *m.kind;
  return {frame()};
}

std::vector<ServerMessage> Engine::on(const client::SetTempo& m) {
  const double before = transport_.tempo_bpm;
  transport_ = clock::request_tempo(transport_, m.bpm);
  if (transport_.tempo_bpm != before) {
    carry_ms_ = 0.0;
    record_tempo(transport_.position_tick);
  }
  return {frame()};
}

std::vector<ServerMessage> Engine::on(const client::SetSwing& m) {
  clock::SwingProfile swing{m.ratio, m.subdivision.value_or(swing_.subdivision)};
  clock::validate(swing);
  swing_ = swing;
  return {frame()};
}

std::vector<ServerMessage> Engine::on(const client::SelectLesson& m) {
  const auto& lesson = curriculum::find_lesson(lessons_, m.id);
  const int index = m.exercise.value_or(0);
  const auto exercise = curriculum::next_exercise(lesson, index);
  if (!exercise) {
    throw Error(ErrorCode::NotFound, "lesson " + std::to_string(m.id) + " has no exercise " + std::to_string(index));
  }
  std::optional<midi::MidiFile> content;
  if (exercise->content_ref) content = resolve_content(*exercise->content_ref);

  std::vector<ServerMessage> out;
  if (transport_.running) out.push_back(finish_session());

  lesson_id_ = m.id;
  exercise_index_ = index;
  exercise_ = exercise;
  cfg_ = exercise->mode;
  cfg_.split_pitch = theory::Pitch{settings_.split_pitch};
  cfg_.hit_window_ms = settings_.hit_window_ms;
  key_ = exercise->key;
  swing_ = exercise->swing;
  held_.clear();
  set_progression(exercise->progression.value_or(theory::two_five_one()), key_);
  if (content) {
    use_content(*exercise->content_ref, *content);
  } else {
    content_id_.reset();
    accompaniment_.clear();
    accompaniment_period_ = 0;
    questions_.clear();
  }
  out.push_back(frame());
  return out;
}

std::vector<ServerMessage> Engine::on(const client::Start&) {
  if (!transport_.running) {
    transport_.running = true;
    transport_.position_tick = 0;
    carry_ms_ = 0.0;
    ++session_;
    classified_.clear();
    recorded_.clear();
    record_tempo(0);
    reset_onwait();
  }
  return {frame()};
}

std::vector<ServerMessage> Engine::on(const client::Stop&) {
  std::vector<ServerMessage> out;
  if (transport_.running) out.push_back(finish_session());
  out.push_back(frame());
  return out;
}

std::vector<ServerMessage> Engine::on(const client::LoadContent& m) {
  use_content(m.id, resolve_content(m.id));
  return {frame()};
}

midi::MidiFile Engine::resolve_content(const ContentId& id) const {
  if (library_ != nullptr && library_->find(id)) return library_->load(id);
  for (auto& c : curriculum::builtin_content()) {
    if (c.id == id) return std::move(c.file);
  }
  throw Error(ErrorCode::NotFound, "unknown content id " + id);
}

void Engine::use_content(const ContentId& id, const midi::MidiFile& file) {
  const auto scaled = rescale(file, kEnginePpq);
  accompaniment_.clear();
  for (const auto& e : midi::merged_events(scaled)) {
    if (is_channel_event(e)) accompaniment_.push_back(e);
  }
  const std::int64_t bar = transport_.ticks_per_bar();
  const std::int64_t length = midi::duration_ticks(scaled) + 1;
  accompaniment_period_ = std::max<std::int64_t>(1, (length + bar - 1) / bar) * bar;
  questions_ = curriculum::question_motifs(scaled);
  content_id_ = id;
}

std::vector<ServerMessage> Engine::events_between(std::int64_t from, std::int64_t to) const {
  std::vector<std::pair<std::int64_t, ServerMessage>> timed;
  if (to <= from || !plays_time(cfg_.mode)) return {};
  for (const auto& c : clock::clicks_between(transport_, from, to)) {
    timed.emplace_back(c.tick, server::Metronome{c.tick, c.accent});
  }
  if (!accompaniment_.empty()) {
    const std::int64_t period = accompaniment_period_;
    for (std::int64_t k = from / period; k * period < to; ++k) {
      for (const auto& e : accompaniment_) {
        const std::int64_t tick = k * period + clock::apply_swing(swing_, e.tick, kEnginePpq);
        if (tick < from || tick >= to) continue;
        auto moved = e;
        moved.tick = tick;
        timed.emplace_back(tick, server::Accompaniment{moved});
      }
    }
  }
  std::stable_sort(timed.begin(), timed.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<ServerMessage> out;
  out.reserve(timed.size());
  for (auto& [tick, m] : timed) out.push_back(std::move(m));
  return out;
}

void Engine::record_tempo(std::int64_t tick) {
  if (transport_.running) recorded_.push_back(midi::MidiEvent::tempo(tempo_us(transport_.tempo_bpm), tick));
}

std::vector<ServerMessage> Engine::advance_ms(double elapsed_ms) {
  if (elapsed_ms < 0.0 || !std::isfinite(elapsed_ms)) {
    throw Error(ErrorCode::InvalidArgument, "elapsed time must be non-negative");
  }
  if (!transport_.running) return {};
  const double total = elapsed_ms + carry_ms_;
  if (total <= 0.0) {
    carry_ms_ = total;
    return {};
  }
  const auto before = transport_;
  transport_ = clock::advance(transport_, total);
  const std::int64_t moved = transport_.position_tick - before.position_tick;
  if (transport_.tempo_bpm == before.tempo_bpm) {
    carry_ms_ = total - clock::tick_to_ms(before, moved);
  } else {
    carry_ms_ = 0.0;
    const std::int64_t bar = before.ticks_per_bar();
    record_tempo((before.position_tick / bar + 1) * bar);
  }
  return events_between(before.position_tick, transport_.position_tick);
}

std::vector<ServerMessage> Engine::advance_ticks(std::int64_t ticks) {
  if (ticks < 0) throw Error(ErrorCode::InvalidArgument, "ticks must be non-negative");
  if (!transport_.running || ticks == 0) return {};
  const std::int64_t from = transport_.position_tick;
  const std::int64_t to = from + ticks;
  if (transport_.pending_tempo_bpm) {
    const std::int64_t bar = transport_.ticks_per_bar();
    const std::int64_t bar_line = (from / bar + 1) * bar;
    if (bar_line <= to) {
      transport_.tempo_bpm = *transport_.pending_tempo_bpm;
      transport_.pending_tempo_bpm.reset();
      record_tempo(bar_line);
    }
  }
  transport_.position_tick = to;
  carry_ms_ = 0.0;
  return events_between(from, to);
}

server::Report Engine::finish_session() {
  const int split = cfg_.split_pitch.number();
  std::vector<midi::MidiEvent> melody;
  for (const auto& e : recorded_) {
    if (e.is_note() && e.pitch() > split - (cfg_.mode == modes::Mode::ExpertPress ? 0 : 1)) melody.push_back(e);
  }
  curriculum::PerformanceResults results;
  if (exercise_) results = curriculum::evaluate_performance(*exercise_, melody, questions_);
  auto report = curriculum::score_session(classified_, std::move(results.motif_results), std::move(results.qa_results),
                                          lesson_id_.value_or(0));

  midi::MidiFile recording;
  recording.format = 0;
  recording.ppq = kEnginePpq;
  recording.tracks.emplace_back();
  recording.tracks.back().events = recorded_;
  recording.tracks.back().events.push_back(midi::MidiEvent::end_of_track(transport_.position_tick));

  transport_.running = false;
  transport_.pending_tempo_bpm.reset();
  carry_ms_ = 0.0;
  held_.clear();
  classified_.clear();
  recorded_.clear();
  last_report_ = report;
  last_recording_ = std::move(recording);
  return {report};
}

}  // namespace improvise::gateway
