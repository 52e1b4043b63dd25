#include "improvise/gateway/protocol.h"

#include "improvise/error.h"

namespace improvise::gateway {

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorCode::Protocol, what); }

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

bool present(const Json& j, const char* key) { return j.contains(key) && !j.at(key).is_null(); }

std::optional<int> optional_int_in(const Json& j, const char* key, int lo, int hi) {
  if (!present(j, key)) return std::nullopt;
  return require_int_in(j, key, lo, hi);
}

modes::Mode mode_from(const Json& j, const char* key) {
  const auto text = require_string(j, key);
  const auto m = modes::parse_mode(text);
  if (!m) bad("unknown mode '" + text + "'");
  return *m;
}

modes::ApproachKind approach_kind_from(const Json& j, const char* key) {
  const auto text = require_string(j, key);
  const auto k = modes::parse_approach_kind(text);
  if (!k) bad("unknown approach kind '" + text + "'");
  return *k;
}

clock::Subdivision subdivision_from(const Json& j, const char* key) {
  const auto text = require_string(j, key);
  const auto s = clock::parse_subdivision(text);
  if (!s) bad("unknown subdivision '" + text + "'");
  return *s;
}

double swing_ratio_from(const Json& j, const char* key) {
  const double r = require_number(j, key);
  if (!(r >= clock::kMinSwingRatio && r <= clock::kMaxSwingRatio)) bad("swing ratio must be within 1-3");
  return r;
}

Json state_to_json(const server::SessionState& s) {
  return {{"mode", std::string(modes::mode_name(s.mode))},
          {"lesson_id", s.lesson_id ? Json(*s.lesson_id) : Json(nullptr)},
          {"exercise", s.exercise},
          {"running", s.running},
          {"tempo_bpm", s.tempo_bpm},
          {"swing_ratio", s.swing.ratio},
          {"subdivision", std::string(clock::subdivision_name(s.swing.subdivision))},
          {"approaches_on", s.approaches_on},
          {"approach_kind", std::string(modes::approach_kind_name(s.approach_kind))},
          {"split_pitch", s.split_pitch},
          {"key", s.key},
          {"content_id", s.content_id ? Json(*s.content_id) : Json(nullptr)},
          {"session", s.session}};
}

server::SessionState state_from_json(const Json& j) {
  server::SessionState s;
  s.mode = mode_from(j, "mode");
  if (present(j, "lesson_id")) s.lesson_id = require_int(j, "lesson_id");
  s.exercise = require_int(j, "exercise");
  s.running = require_bool(j, "running");
  s.tempo_bpm = require_number(j, "tempo_bpm");
  s.swing.ratio = swing_ratio_from(j, "swing_ratio");
  s.swing.subdivision = subdivision_from(j, "subdivision");
  s.approaches_on = require_bool(j, "approaches_on");
  s.approach_kind = approach_kind_from(j, "approach_kind");
  s.split_pitch = require_int_in(j, "split_pitch", modes::kLowestKey, modes::kHighestKey);
  s.key = require_string(j, "key");
  if (present(j, "content_id")) s.content_id = require_string(j, "content_id");
  s.session = require_int(j, "session");
  return s;
}

Json summary_to_json(const server::LessonSummary& s) {
  return {{"id", s.id},         {"title", s.title}, {"label", s.label},
          {"objective", s.objective}, {"tools", s.tools}, {"exercises", s.exercises}};
}

server::LessonSummary summary_from_json(const Json& j) {
  server::LessonSummary s;
  s.id = require_int(j, "id");
  s.title = require_string(j, "title");
  s.label = require_string(j, "label");
  s.objective = require_string(j, "objective");
  for (const auto& t : require_field(j, "tools")) {
    if (!t.is_string()) bad("tools must be strings");
    s.tools.push_back(t.get<std::string>());
  }
  s.exercises = require_int(j, "exercises");
  return s;
}

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const Json::exception&) {
    bad("message is not valid JSON");
  }
}

}  // namespace

ClientMessage client_message_from_json(const Json& j) {
  if (!j.is_object()) bad("message must be a JSON object");
  const auto type = require_string(j, "type");
  if (type == "note_on") {
    return client::NoteOn{require_int_in(j, "pitch", 0, 127), optional_int_in(j, "velocity", 0, 127)};
  }
  if (type == "note_off") {
    return client::NoteOff{require_int_in(j, "pitch", 0, 127), optional_int_in(j, "velocity", 0, 127)};
  }
  if (type == "set_mode") return client::SetMode{mode_from(j, "mode")};
  if (type == "toggle_approaches") {
    client::ToggleApproaches t;
    if (present(j, "kind")) t.kind = approach_kind_from(j, "kind");
    return t;
  }
  if (type == "set_tempo") {
    const double bpm = require_number(j, "bpm");
    if (!(bpm >= kMinTempoBpm && bpm <= kMaxTempoBpm)) bad("bpm must be within 20-400");
    return client::SetTempo{bpm};
  }
  if (type == "set_swing") {
    client::SetSwing s{swing_ratio_from(j, "ratio"), std::nullopt};
    if (present(j, "subdivision")) s.subdivision = subdivision_from(j, "subdivision");
    return s;
  }
  if (type == "select_lesson") {
    return client::SelectLesson{require_int(j, "id"), optional_int_in(j, "exercise", 0, 1000)};
  }
  if (type == "start") return client::Start{};
  if (type == "stop") return client::Stop{};
  if (type == "load_content") {
    auto id = require_string(j, "id");
    if (id.empty()) bad("content id is empty");
    return client::LoadContent{std::move(id)};
  }
  bad("unknown message type '" + type + "'");
}

ClientMessage parse_client_message(std::string_view text) { return client_message_from_json(parse_json(text)); }

std::string_view client_message_type(const ClientMessage& m) {
  return std::visit(overloaded{
                        [](const client::NoteOn&) { return std::string_view("note_on"); },
                        [](const client::NoteOff&) { return std::string_view("note_off"); },
                        [](const client::SetMode&) { return std::string_view("set_mode"); },
                        [](const client::ToggleApproaches&) { return std::string_view("toggle_approaches"); },
                        [](const client::SetTempo&) { return std::string_view("set_tempo"); },
                        [](const client::SetSwing&) { return std::string_view("set_swing"); },
                        [](const client::SelectLesson&) { return std::string_view("select_lesson"); },
                        [](const client::Start&) { return std::string_view("start"); },
                        [](const client::Stop&) { return std::string_view("stop"); },
                        [](const client::LoadContent&) { return std::string_view("load_content"); },
                    },
                    m);
}

Json client_message_to_json(const ClientMessage& m) {
  Json j{{"type", std::string(client_message_type(m))}};
  std::visit(overloaded{
                 [&](const client::NoteOn& n) {
                   j["pitch"] = n.pitch;
                   if (n.velocity) j["velocity"] = *n.velocity;
                 },
                 [&](const client::NoteOff& n) {
                   j["pitch"] = n.pitch;
                   if (n.velocity) j["velocity"] = *n.velocity;
                 },
                 [&](const client::SetMode& s) { j["mode"] = std::string(modes::mode_name(s.mode)); },
                 [&](const client::ToggleApproaches& t) {
                   if (t.kind) j["kind"] = std::string(modes::approach_kind_name(*t.kind));
                 },
                 [&](const client::SetTempo& t) { j["bpm"] = t.bpm; },
                 [&](const client::SetSwing& s) {
                   j["ratio"] = s.ratio;
                   if (s.subdivision) j["subdivision"] = std::string(clock::subdivision_name(*s.subdivision));
                 },
                 [&](const client::SelectLesson& s) {
                   j["id"] = s.id;
                   if (s.exercise) j["exercise"] = *s.exercise;
                 },
                 [](const client::Start&) {},
                 [](const client::Stop&) {},
                 [&](const client::LoadContent& l) { j["id"] = l.id; },
             },
             m);
  return j;
}

server::LessonSummary server::summarize(const curriculum::LessonSpec& lesson) {
  return {lesson.id, lesson.title, lesson.label(), lesson.objective, lesson.tools,
          static_cast<int>(lesson.exercises.size())};
}

std::string_view server_message_type(const ServerMessage& m) {
  return std::visit(overloaded{
                        [](const server::Frame&) { return std::string_view("frame"); },
                        [](const server::PressClassMsg&) { return std::string_view("press_class"); },
                        [](const server::Report&) { return std::string_view("report"); },
                        [](const server::LessonList&) { return std::string_view("lesson_list"); },
                        [](const server::ContentList&) { return std::string_view("content_list"); },
                        [](const server::Accompaniment&) { return std::string_view("accompaniment_event"); },
                        [](const server::Metronome&) { return std::string_view("metronome_event"); },
                        [](const server::ErrorMsg&) { return std::string_view("error"); },
                    },
                    m);
}

Json server_message_to_json(const ServerMessage& m) {
  Json j{{"type", std::string(server_message_type(m))}};
  std::visit(overloaded{
                 [&](const server::Frame& f) {
                   j.update(frame_to_json(f.frame));
                   j["state"] = state_to_json(f.state);
                 },
                 [&](const server::PressClassMsg& p) {
                   j["pitch"] = p.pitch;
                   j["tick"] = p.tick;
                   j["class"] = std::string(modes::press_class_name(p.press));
                   j["timing_error_ms"] = p.timing_error_ms ? Json(*p.timing_error_ms) : Json(nullptr);
                 },
                 [&](const server::Report& r) { j["report"] = report_to_json(r.report); },
                 [&](const server::LessonList& l) {
                   Json list = Json::array();
                   for (const auto& s : l.lessons) list.push_back(summary_to_json(s));
                   j["lessons"] = std::move(list);
                 },
                 [&](const server::ContentList& c) {
                   Json list = Json::array();
                   for (const auto& e : c.content) list.push_back(manifest_entry_to_json(e));
                   j["content"] = std::move(list);
                 },
                 [&](const server::Accompaniment& a) { j.update(midi_event_to_json(a.event)); },
                 [&](const server::Metronome& m) {
                   j["tick"] = m.tick;
                   j["accent"] = m.accent;
                 },
                 [&](const server::ErrorMsg& e) {
                   j["code"] = e.code;
                   j["message"] = e.message;
                 },
             },
             m);
  return j;
}

ServerMessage server_message_from_json(const Json& j) {
  if (!j.is_object()) bad("message must be a JSON object");
  const auto type = require_string(j, "type");
  if (type == "frame") return server::Frame{frame_from_json(j), state_from_json(require_field(j, "state"))};
  if (type == "press_class") {
    server::PressClassMsg p;
    p.pitch = require_int_in(j, "pitch", 0, 127);
    p.tick = require_field(j, "tick").get<std::int64_t>();
    const auto c = modes::parse_press_class(require_string(j, "class"));
    if (!c) bad("unknown press class");
    p.press = *c;
    if (present(j, "timing_error_ms")) p.timing_error_ms = require_number(j, "timing_error_ms");
    return p;
  }
  if (type == "report") return server::Report{report_from_json(require_field(j, "report"))};
  if (type == "lesson_list") {
    server::LessonList l;
    for (const auto& s : require_field(j, "lessons")) l.lessons.push_back(summary_from_json(s));
    return l;
  }
  if (type == "content_list") {
    server::ContentList c;
    for (const auto& e : require_field(j, "content")) c.content.push_back(manifest_entry_from_json(e));
    return c;
  }
  if (type == "accompaniment_event") return server::Accompaniment{midi_event_from_json(j)};
  if (type == "metronome_event") {
    return server::Metronome{require_field(j, "tick").get<std::int64_t>(), require_bool(j, "accent")};
  }
  if (type == "error") return server::ErrorMsg{require_string(j, "code"), require_string(j, "message")};
  bad("unknown message type '" + type + "'");
}

ServerMessage parse_server_message(std::string_view text) { return server_message_from_json(parse_json(text)); }

std::string serialize(const ClientMessage& m) { return client_message_to_json(m).dump(); }
std::string serialize(const ServerMessage& m) { return server_message_to_json(m).dump(); }

server::ErrorMsg error_message(const std::exception& e) {
  if (const auto* err = dynamic_cast<const Error*>(&e)) return {std::string(to_string(err->code())), err->what()};
  return {"Internal", e.what()};
}

}  // namespace improvise::gateway
