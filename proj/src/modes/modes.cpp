#include "improvise/modes/modes.h"

#include <algorithm>
#include <cmath>

#include "improvise/error.h"
#include "improvise/theory/approaches.h"

namespace improvise::modes {

namespace {

constexpr std::array<std::pair<Mode, std::string_view>, 4> kModeNames{{
    {Mode::GuidedPress, "guided_press"},
    {Mode::RollingImprov, "rolling_improv"},
    {Mode::OnwaitRoll, "onwait_roll"},
    {Mode::ExpertPress, "expert_press"},
}};

constexpr std::array<std::pair<ApproachKind, std::string_view>, 3> kApproachNames{{
    {ApproachKind::HalfStep, "half_step"},
    {ApproachKind::ScaleAbove, "scale_above"},
    {ApproachKind::Both, "both"},
}};

constexpr std::array<std::pair<PressClass, std::string_view>, 6> kPressNames{{
    {PressClass::ChordToneHit, "chord_tone_hit"},
    {PressClass::ApproachHit, "approach_hit"},
    {PressClass::ProgressionHit, "progression_hit"},
    {PressClass::OutOfSet, "out_of_set"},
    {PressClass::Early, "early"},
    {PressClass::Late, "late"},
}};

template <typename E, std::size_t N>
std::string_view name_of(const std::array<std::pair<E, std::string_view>, N>& table, E value) {
  for (const auto& [e, name] : table) {
    if (e == value) return name;
  }
  return "";
}

template <typename E, std::size_t N>
std::optional<E> value_of(const std::array<std::pair<E, std::string_view>, N>& table, std::string_view name) {
  for (const auto& [e, n] : table) {
    if (n == name) return e;
  }
  return std::nullopt;
}

// Yellow in the comping register, pink above the split, purple approaches above the split.
void paint_chord(HighlightFrame& frame, const Chord& chord, const theory::Key& key, const ModeConfig& cfg,
                 bool yellow) {
  const auto tones = theory::chord_tones(chord);
  const auto approaches = cfg.approaches_on ? approach_set(chord, key, cfg) : theory::PitchClassSet{};
  const int split = cfg.split_pitch.number();
  if (yellow) {
    const auto [lo, hi] = comping_register(cfg);
    for (int p = lo; p < hi; ++p) {
      if (tones.contains(theory::PitchClass(p))) frame.set_color(Pitch(p), KeyColor::ProgressionYellow);
    }
  }
  for (int p = std::max(split, kLowestKey); p <= kHighestKey; ++p) {
    const theory::PitchClass pc(p);
    if (tones.contains(pc)) {
      frame.set_color(Pitch(p), KeyColor::ChordTonePink);
    } else if (approaches.contains(pc)) {
      frame.set_color(Pitch(p), KeyColor::ApproachPurple);
    }
  }
  frame.active_chord = chord;
}

}  // namespace

std::string_view mode_name(Mode m) { return name_of(kModeNames, m); }
std::optional<Mode> parse_mode(std::string_view name) { return value_of(kModeNames, name); }
std::string_view approach_kind_name(ApproachKind k) { return name_of(kApproachNames, k); }
std::optional<ApproachKind> parse_approach_kind(std::string_view name) { return value_of(kApproachNames, name); }
std::string_view press_class_name(PressClass c) { return name_of(kPressNames, c); }
std::optional<PressClass> parse_press_class(std::string_view name) { return value_of(kPressNames, name); }

void validate(const ModeConfig& cfg) {
  const int split = cfg.split_pitch.number();
  if (split < kLowestKey || split > kHighestKey) {
    throw Error(ErrorCode::InvalidArgument, "split pitch must be within 21..108");
  }
  if (!(cfg.hit_window_ms >= 0.0)) throw Error(ErrorCode::InvalidArgument, "hit window must be non-negative");
  if (!(cfg.lookahead_beats >= 0.0)) throw Error(ErrorCode::InvalidArgument, "lookahead must be non-negative");
  if (cfg.required_hits < 1) throw Error(ErrorCode::InvalidArgument, "required hits must be at least 1");
}

ModeConfig set_mode(ModeConfig cfg, Mode mode) {
  cfg.mode = mode;
  return cfg;
}

ModeConfig toggle_approaches(ModeConfig cfg) {
  cfg.approaches_on = !cfg.approaches_on;
  return cfg;
}

theory::PitchClassSet approach_set(const Chord& chord, const theory::Key& key, const ModeConfig& cfg) {
  theory::PitchClassSet out;
  if (cfg.approach_kind != ApproachKind::ScaleAbove) out = out | theory::half_step_approaches(chord);
  if (cfg.approach_kind != ApproachKind::HalfStep) {
    theory::Scale scale = theory::key_scale(key);
    try {
      scale = theory::chord_scale(chord, key);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NoChordScale) throw;
    }
    out = out | theory::scale_above_approaches(chord, scale);
  }
  return out;
}

std::pair<int, int> comping_register(const ModeConfig& cfg) {
  const int split = cfg.split_pitch.number();
  return {std::max(kLowestKey, split - 12), std::max(kLowestKey, split)};
}

std::optional<std::size_t> chord_index_at(std::span<const theory::TimedChord> realized, std::int64_t tick) {
  for (std::size_t i = 0; i < realized.size(); ++i) {
    if (realized[i].start_tick <= tick && tick < realized[i].end_tick()) return i;
  }
  return std::nullopt;
}

HighlightFrame guided_press_frame(std::span<const theory::TimedChord> realized, std::size_t index,
                                  const theory::Key& key, const ModeConfig& cfg) {
  if (index >= realized.size()) throw Error(ErrorCode::InvalidArgument, "chord index out of range");
  HighlightFrame frame;
  frame.frame_tick = realized[index].start_tick;
  frame.active_start_tick = realized[index].start_tick;
  paint_chord(frame, realized[index].chord, key, cfg, true);
  return frame;
}

HighlightFrame roll_frame_at(std::span<const theory::TimedChord> realized, std::int64_t position,
                             std::int64_t ticks_per_beat, const theory::Key& key, const ModeConfig& cfg) {
  HighlightFrame frame;
  frame.frame_tick = position;
  const auto horizon =
      position + static_cast<std::int64_t>(std::llround(cfg.lookahead_beats * static_cast<double>(ticks_per_beat)));
  const auto [lo, hi] = comping_register(cfg);
  for (const auto& tc : realized) {
    if (tc.start_tick < position || tc.start_tick > horizon) continue;
    const auto tones = theory::chord_tones(tc.chord);
    for (int p = lo; p < hi; ++p) {
      if (tones.contains(theory::PitchClass(p))) {
        frame.falling.push_back({Pitch(p), tc.start_tick, tc.duration_ticks, KeyColor::ProgressionYellow});
      }
    }
  }
  std::stable_sort(frame.falling.begin(), frame.falling.end(), [](const FallingNote& a, const FallingNote& b) {
    return a.hit_tick != b.hit_tick ? a.hit_tick < b.hit_tick : a.pitch < b.pitch;
  });
  if (const auto i = chord_index_at(realized, position)) {
    frame.active_start_tick = realized[*i].start_tick;
    paint_chord(frame, realized[*i].chord, key, cfg, true);
  }
  return frame;
}

HighlightFrame rolling_frame(std::span<const theory::TimedChord> realized, const clock::Transport& t,
                             const theory::Key& key, const ModeConfig& cfg) {
  return roll_frame_at(realized, t.position_tick, t.ticks_per_beat(), key, cfg);
}

std::int64_t OnWaitState::position() const {
  if (realized.empty()) return 0;
  if (finished()) return realized.back().end_tick();
  return realized[index].start_tick;
}

HighlightFrame onwait_frame(const OnWaitState& state, const theory::Key& key, const ModeConfig& cfg) {
  return roll_frame_at(state.realized, state.position(), state.ticks_per_beat, key, cfg);
}

std::pair<OnWaitState, HighlightFrame> onwait_step(OnWaitState state, const midi::MidiEvent& event,
                                                   const theory::Key& key, const ModeConfig& cfg) {
  if (!state.finished() && event.kind == midi::EventKind::NoteOn && event.pitch() >= cfg.split_pitch.number()) {
    const auto& chord = state.realized[state.index].chord;
    const theory::PitchClass pc(event.pitch());
    bool gate = theory::chord_tones(chord).contains(pc);
    if (!gate && cfg.gate_on_approaches && cfg.approaches_on) gate = approach_set(chord, key, cfg).contains(pc);
    if (gate && ++state.hits >= cfg.required_hits) {
      ++state.index;
      state.hits = 0;
    }
  }
  auto frame = onwait_frame(state, key, cfg);
  return {std::move(state), std::move(frame)};
}

HighlightFrame expert_press_step(const recognition::HeldNotes& held, const ModeConfig& cfg, const theory::Key& key,
                                 std::int64_t frame_tick) {
  HighlightFrame frame;
  frame.frame_tick = frame_tick;
  const Pitch limit(std::min(cfg.split_pitch.number() + 1, 127));
  if (const auto chord = recognition::recognize_chord(held.below(limit))) {
    paint_chord(frame, *chord, key, cfg, false);
  }
  return frame;
}

Classification classify_press_timed(const midi::MidiEvent& event, const HighlightFrame& frame,
                                    const clock::Transport& t, const ModeConfig& cfg) {
  if (event.kind != midi::EventKind::NoteOn) {
    throw Error(ErrorCode::InvalidArgument, "only note_on events are classified");
  }
  const Pitch pitch(event.pitch());
  const KeyColor color = frame.color_of(pitch);

  if (cfg.mode == Mode::RollingImprov) {
    std::optional<std::int64_t> best;
    auto consider = [&](std::int64_t target) {
      if (!best || std::llabs(t.position_tick - target) < std::llabs(t.position_tick - *best)) best = target;
    };
    if (color == KeyColor::ProgressionYellow && frame.active_start_tick) consider(*frame.active_start_tick);
    for (const auto& f : frame.falling) {
      if (f.pitch == pitch && f.color == KeyColor::ProgressionYellow) consider(f.hit_tick);
    }
    if (best) {
      const double error_ms = clock::tick_to_ms(t, t.position_tick - *best);
      PressClass press = PressClass::ProgressionHit;
      if (std::abs(error_ms) > cfg.hit_window_ms) press = error_ms < 0 ? PressClass::Early : PressClass::Late;
      return {press, error_ms};
    }
  }

  switch (color) {
    case KeyColor::ChordTonePink:
      return {PressClass::ChordToneHit, std::nullopt};
    case KeyColor::ApproachPurple:
      return {PressClass::ApproachHit, std::nullopt};
    case KeyColor::ProgressionYellow:
      return {PressClass::ProgressionHit, std::nullopt};
    case KeyColor::Off:
      break;
  }
  return {PressClass::OutOfSet, std::nullopt};
}

PressClass classify_press(const midi::MidiEvent& event, const HighlightFrame& frame, const clock::Transport& t,
                          const ModeConfig& cfg) {
  return classify_press_timed(event, frame, t, cfg).press;
}

}  // namespace improvise::modes
