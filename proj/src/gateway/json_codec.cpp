#include "improvise/gateway/json_codec.h"

#include "improvise/error.h"

namespace improvise::gateway {

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorCode::Protocol, what); }

template <typename T>
Json optional_json(const std::optional<T>& v) {
  return v ? Json(*v) : Json(nullptr);
}

int ranged(const Json& j, const char* key, int lo, int hi) {
  const int v = require_int(j, key);
  if (v < lo || v > hi) bad(std::string("field '") + key + "' must be " + std::to_string(lo) + "-" + std::to_string(hi));
  return v;
}

bool present(const Json& j, const char* key) { return j.contains(key) && !j.at(key).is_null(); }

int int_or(const Json& j, const char* key, int fallback) { return present(j, key) ? require_int(j, key) : fallback; }

double number_or(const Json& j, const char* key, double fallback) {
  return present(j, key) ? require_number(j, key) : fallback;
}

bool bool_or(const Json& j, const char* key, bool fallback) { return present(j, key) ? require_bool(j, key) : fallback; }

theory::PitchClass pitch_class_from(const Json& j, const char* key) {
  const auto& v = require_field(j, key);
  if (v.is_number_integer()) {
    const int n = v.get<int>();
    if (n < 0 || n > 11) bad(std::string("field '") + key + "' must be 0-11");
    return theory::PitchClass(n);
  }
  if (v.is_string()) {
    if (const auto pc = theory::parse_pitch_class(v.get<std::string>())) return *pc;
  }
  bad(std::string("field '") + key + "' is not a pitch class");
}

theory::Key key_from(const Json& j, const char* key) {
  const auto text = require_string(j, key);
  const auto parsed = theory::parse_key(text);
  if (!parsed) bad("unknown key '" + text + "'");
  return *parsed;
}

Json scale_to_json(const theory::Scale& s) {
  return {{"tonic", std::string(theory::pitch_class_name(s.tonic))}, {"mode", std::string(theory::mode_name(s.mode))}};
}

theory::Scale scale_from_json(const Json& j) {
  const auto mode_text = require_string(j, "mode");
  const auto mode = theory::parse_mode(mode_text);
  if (!mode) bad("unknown scale mode '" + mode_text + "'");
  return {pitch_class_from(j, "tonic"), *mode};
}

Json relation_to_json(const recognition::MotifRelation& r) {
  return {{"kind", std::string(recognition::relation_name(r.kind))}, {"shift_degrees", r.shift_degrees}};
}

recognition::MotifRelation relation_from_json(const Json& j) {
  const auto kind = require_string(j, "kind");
  for (auto k : {recognition::RelationKind::Repeat, recognition::RelationKind::Sequence,
                 recognition::RelationKind::RhythmicVariation, recognition::RelationKind::MelodicVariation,
                 recognition::RelationKind::Unrelated}) {
    if (recognition::relation_name(k) == kind) return {k, int_or(j, "shift_degrees", 0)};
  }
  bad("unknown relation kind '" + kind + "'");
}

}  // namespace

const Json& require_field(const Json& j, const char* key) {
  if (!j.is_object()) bad("expected a JSON object");
  const auto it = j.find(key);
  if (it == j.end()) bad(std::string("missing field '") + key + "'");
  return *it;
}

int require_int(const Json& j, const char* key) {
  const auto& v = require_field(j, key);
  if (v.is_number_integer()) return v.get<int>();
  if (v.is_number_float()) {
    const double d = v.get<double>();
    if (d == static_cast<double>(static_cast<long long>(d))) return static_cast<int>(d);
  }
  bad(std::string("field '") + key + "' must be an integer");
}

double require_number(const Json& j, const char* key) {
  const auto& v = require_field(j, key);
  if (!v.is_number()) bad(std::string("field '") + key + "' must be a number");
  return v.get<double>();
}

std::string require_string(const Json& j, const char* key) {
  const auto& v = require_field(j, key);
  if (!v.is_string()) bad(std::string("field '") + key + "' must be a string");
  return v.get<std::string>();
}

int require_int_in(const Json& j, const char* key, int lo, int hi) { return ranged(j, key, lo, hi); }

bool require_bool(const Json& j, const char* key) {
  const auto& v = require_field(j, key);
  if (!v.is_boolean()) bad(std::string("field '") + key + "' must be a boolean");
  return v.get<bool>();
}

Json chord_to_json(const theory::Chord& chord) {
  return {{"root", chord.root.value()},
          {"quality", std::string(theory::quality_name(chord.quality))},
          {"name", theory::chord_name(chord)}};
}

theory::Chord chord_from_json(const Json& j) {
  const auto q = require_string(j, "quality");
  const auto quality = theory::parse_quality(q);
  if (!quality) bad("unknown chord quality '" + q + "'");
  return {pitch_class_from(j, "root"), *quality};
}

Json frame_to_json(const modes::HighlightFrame& frame) {
  Json keys = Json::array();
  for (auto c : frame.key_colors) keys.push_back(static_cast<int>(c));
  Json falling = Json::array();
  for (const auto& f : frame.falling) {
    falling.push_back({{"pitch", f.pitch.number()},
                       {"hit_tick", f.hit_tick},
                       {"duration_ticks", f.duration_ticks},
                       {"color", static_cast<int>(f.color)}});
  }
  return {{"frame_tick", frame.frame_tick},
          {"keys", std::move(keys)},
          {"falling", std::move(falling)},
          {"active_chord", frame.active_chord ? chord_to_json(*frame.active_chord) : Json(nullptr)},
          {"active_start_tick", optional_json(frame.active_start_tick)}};
}

modes::HighlightFrame frame_from_json(const Json& j) {
  modes::HighlightFrame f;
  f.frame_tick = require_field(j, "frame_tick").get<std::int64_t>();
  const auto& keys = require_field(j, "keys");
  if (!keys.is_array() || keys.size() != modes::kKeyCount) bad("field 'keys' must hold 88 colors");
  for (std::size_t i = 0; i < keys.size(); ++i) {
    if (!keys[i].is_number_integer() || keys[i].get<int>() < 0 || keys[i].get<int>() > 3) bad("key color out of range");
    f.key_colors[i] = static_cast<modes::KeyColor>(keys[i].get<int>());
  }
  for (const auto& n : require_field(j, "falling")) {
    const int color = require_int(n, "color");
    if (color < 0 || color > 3) bad("falling note color out of range");
    f.falling.push_back({theory::Pitch(require_int(n, "pitch")), require_field(n, "hit_tick").get<std::int64_t>(),
                         require_field(n, "duration_ticks").get<std::int64_t>(), static_cast<modes::KeyColor>(color)});
  }
  if (present(j, "active_chord")) f.active_chord = chord_from_json(j.at("active_chord"));
  if (present(j, "active_start_tick")) f.active_start_tick = j.at("active_start_tick").get<std::int64_t>();
  return f;
}

Json mode_config_to_json(const modes::ModeConfig& cfg) {
  return {{"mode", std::string(modes::mode_name(cfg.mode))},
          {"approaches_on", cfg.approaches_on},
          {"approach_kind", std::string(modes::approach_kind_name(cfg.approach_kind))},
          {"split_pitch", cfg.split_pitch.number()},
          {"hit_window_ms", cfg.hit_window_ms},
          {"lookahead_beats", cfg.lookahead_beats},
          {"required_hits", cfg.required_hits},
          {"gate_on_approaches", cfg.gate_on_approaches}};
}

modes::ModeConfig mode_config_from_json(const Json& j) {
  modes::ModeConfig cfg;
  const auto mode = require_string(j, "mode");
  const auto parsed = modes::parse_mode(mode);
  if (!parsed) bad("unknown mode '" + mode + "'");
  cfg.mode = *parsed;
  cfg.approaches_on = bool_or(j, "approaches_on", cfg.approaches_on);
  if (present(j, "approach_kind")) {
    const auto kind = modes::parse_approach_kind(require_string(j, "approach_kind"));
    if (!kind) bad("unknown approach kind");
    cfg.approach_kind = *kind;
  }
  const int split = int_or(j, "split_pitch", cfg.split_pitch.number());
  if (split < modes::kLowestKey || split > modes::kHighestKey) bad("split_pitch must be 21-108");
  cfg.split_pitch = theory::Pitch(split);
  cfg.hit_window_ms = number_or(j, "hit_window_ms", cfg.hit_window_ms);
  cfg.lookahead_beats = number_or(j, "lookahead_beats", cfg.lookahead_beats);
  cfg.required_hits = int_or(j, "required_hits", cfg.required_hits);
  cfg.gate_on_approaches = bool_or(j, "gate_on_approaches", cfg.gate_on_approaches);
  return cfg;
}

Json progression_to_json(const theory::Progression& p) {
  Json steps = Json::array();
  for (const auto& s : p.steps) {
    steps.push_back({{"degree", s.degree},
                     {"quality", std::string(theory::quality_name(s.quality))},
                     {"beats", Json::array({s.duration.num, s.duration.den})}});
  }
  return {{"name", p.name}, {"steps", std::move(steps)}};
}

theory::Progression progression_from_json(const Json& j) {
  if (j.is_string()) {
    const auto preset = theory::preset_progression(j.get<std::string>());
    if (!preset) bad("unknown progression preset '" + j.get<std::string>() + "'");
    return *preset;
  }
  theory::Progression p;
  p.name = require_string(j, "name");
  for (const auto& s : require_field(j, "steps")) {
    theory::ProgressionStep step;
    step.degree = require_int(s, "degree");
    const auto q = theory::parse_quality(require_string(s, "quality"));
    if (!q) bad("unknown chord quality in progression");
    step.quality = *q;
    const auto& beats = require_field(s, "beats");
    if (beats.is_number_integer()) {
      step.duration = {beats.get<std::int64_t>(), 1};
    } else if (beats.is_array() && beats.size() == 2 && beats[0].is_number_integer() && beats[1].is_number_integer()) {
      step.duration = {beats[0].get<std::int64_t>(), beats[1].get<std::int64_t>()};
    } else {
      bad("field 'beats' must be an integer or [num, den]");
    }
    p.steps.push_back(step);
  }
  return p;
}

Json exercise_to_json(const curriculum::Exercise& e) {
  return {{"mode", mode_config_to_json(e.mode)},
          {"progression", e.progression ? progression_to_json(*e.progression) : Json(nullptr)},
          {"key", theory::key_name(e.key)},
          {"scale", e.scale ? scale_to_json(*e.scale) : Json(nullptr)},
          {"content_ref", optional_json(e.content_ref)},
          {"swing",
           {{"ratio", e.swing.ratio}, {"subdivision", std::string(clock::subdivision_name(e.swing.subdivision))}}},
          {"evaluation", std::string(curriculum::evaluation_name(e.evaluation))}};
}

curriculum::Exercise exercise_from_json(const Json& j) {
  curriculum::Exercise e;
  e.mode = mode_config_from_json(require_field(j, "mode"));
  if (present(j, "progression")) e.progression = progression_from_json(j.at("progression"));
  e.key = key_from(j, "key");
  if (present(j, "scale")) e.scale = scale_from_json(j.at("scale"));
  if (present(j, "content_ref")) e.content_ref = require_string(j, "content_ref");
  if (present(j, "swing")) {
    const auto& s = j.at("swing");
    e.swing.ratio = require_number(s, "ratio");
    if (present(s, "subdivision")) {
      const auto sub = clock::parse_subdivision(require_string(s, "subdivision"));
      if (!sub) bad("unknown swing subdivision");
      e.swing.subdivision = *sub;
    }
  }
  const auto ev = require_string(j, "evaluation");
  const auto parsed = curriculum::parse_evaluation(ev);
  if (!parsed) bad("unknown evaluation '" + ev + "'");
  e.evaluation = *parsed;
  return e;
}

Json lesson_to_json(const curriculum::LessonSpec& lesson) {
  Json exercises = Json::array();
  for (const auto& e : lesson.exercises) exercises.push_back(exercise_to_json(e));
  return {{"id", lesson.id},
          {"title", lesson.title},
          {"objective", lesson.objective},
          {"tools", lesson.tools},
          {"exercises", std::move(exercises)}};
}

curriculum::LessonSpec lesson_from_json(const Json& j) {
  curriculum::LessonSpec l;
  l.id = require_int(j, "id");
  l.title = require_string(j, "title");
  if (present(j, "objective")) l.objective = require_string(j, "objective");
  if (present(j, "tools")) {
    for (const auto& t : j.at("tools")) {
      if (!t.is_string()) bad("tools must be strings");
      l.tools.push_back(t.get<std::string>());
    }
  }
  for (const auto& e : require_field(j, "exercises")) l.exercises.push_back(exercise_from_json(e));
  return l;
}

Json lesson_summary_to_json(const curriculum::LessonSpec& lesson) {
  return {{"id", lesson.id},
          {"title", lesson.title},
          {"label", lesson.label()},
          {"objective", lesson.objective},
          {"tools", lesson.tools},
          {"exercises", lesson.exercises.size()}};
}

Json motif_to_json(const recognition::Motif& m) {
  Json notes = Json::array();
  for (const auto& n : m.notes()) {
    notes.push_back({{"pitch", n.pitch.number()}, {"onset_tick", n.onset_tick}, {"duration_ticks", n.duration_ticks}});
  }
  return notes;
}

recognition::Motif motif_from_json(const Json& j) {
  if (!j.is_array()) bad("a motif is an array of notes");
  std::vector<recognition::MotifNote> notes;
  for (const auto& n : j) {
    notes.push_back({theory::Pitch(require_int(n, "pitch")), require_field(n, "onset_tick").get<std::int64_t>(),
                     require_field(n, "duration_ticks").get<std::int64_t>()});
  }
  try {
    return recognition::Motif(std::move(notes));
  } catch (const Error& e) {
    bad(e.what());
  }
}

Json report_to_json(const curriculum::SessionReport& r) {
  Json counts = Json::object();
  for (auto c : modes::kAllPressClasses) counts[std::string(modes::press_class_name(c))] = r.count(c);
  Json motifs = Json::array();
  for (const auto& m : r.motif_results) motifs.push_back(relation_to_json(m));
  Json qa = Json::array();
  for (const auto& q : r.qa_results) {
    qa.push_back({{"question", motif_to_json(q.question)},
                  {"answer", motif_to_json(q.answer)},
                  {"relation", relation_to_json(q.relation)},
                  {"rhythm_matched", q.rhythm_matched}});
  }
  return {{"lesson_id", r.lesson_id},
          {"counts", std::move(counts)},
          {"total_presses", r.total_presses},
          {"accuracy_percent", r.accuracy_percent},
          {"empty", r.empty},
          {"mean_abs_timing_error_ms", r.mean_abs_timing_error_ms},
          {"timed_presses", r.timed_presses},
          {"motif_results", std::move(motifs)},
          {"qa_results", std::move(qa)}};
}

curriculum::SessionReport report_from_json(const Json& j) {
  curriculum::SessionReport r;
  r.lesson_id = require_int(j, "lesson_id");
  const auto& counts = require_field(j, "counts");
  for (auto c : modes::kAllPressClasses) {
    r.counts[static_cast<std::size_t>(c)] = require_int(counts, std::string(modes::press_class_name(c)).c_str());
  }
  r.total_presses = require_int(j, "total_presses");
  r.accuracy_percent = require_number(j, "accuracy_percent");
  r.empty = require_bool(j, "empty");
  r.mean_abs_timing_error_ms = require_number(j, "mean_abs_timing_error_ms");
  r.timed_presses = require_int(j, "timed_presses");
  for (const auto& m : require_field(j, "motif_results")) r.motif_results.push_back(relation_from_json(m));
  for (const auto& q : require_field(j, "qa_results")) {
    r.qa_results.push_back({motif_from_json(require_field(q, "question")), motif_from_json(require_field(q, "answer")),
                            relation_from_json(require_field(q, "relation")), require_bool(q, "rhythm_matched")});
  }
  return r;
}

Json midi_event_to_json(const midi::MidiEvent& e) {
  Json j{{"event", std::string(midi::event_kind_name(e.kind))}, {"channel", e.channel}, {"tick", e.tick}};
  switch (e.kind) {
    case midi::EventKind::NoteOn:
    case midi::EventKind::NoteOff:
      j["pitch"] = e.data1;
      j["velocity"] = e.data2;
      break;
    case midi::EventKind::ControlChange:
      j["controller"] = e.data1;
      j["value"] = e.data2;
      break;
    case midi::EventKind::ProgramChange:
      j["program"] = e.data1;
      break;
    default:
      bad("only channel events travel as accompaniment");
  }
  return j;
}

midi::MidiEvent midi_event_from_json(const Json& j) {
  const auto kind = require_string(j, "event");
  const int channel = ranged(j, "channel", 0, 15);
  const auto tick = require_field(j, "tick").get<std::int64_t>();
  try {
    if (kind == "note_on") return midi::MidiEvent::note_on(channel, ranged(j, "pitch", 0, 127), ranged(j, "velocity", 0, 127), tick);
    if (kind == "note_off") {
      return midi::MidiEvent::note_off(channel, ranged(j, "pitch", 0, 127), ranged(j, "velocity", 0, 127), tick);
    }
    if (kind == "control_change") {
      return midi::MidiEvent::control_change(channel, ranged(j, "controller", 0, 127), ranged(j, "value", 0, 127), tick);
    }
    if (kind == "program_change") return midi::MidiEvent::program_change(channel, ranged(j, "program", 0, 127), tick);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::Protocol) throw;
    bad(e.what());
  }
  bad("unknown event kind '" + kind + "'");
}

}  // namespace improvise::gateway
