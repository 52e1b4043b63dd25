#include <algorithm>
#include <fstream>
#include <random>
#include <string>

#include "doctest.h"
#include "frame_oracle.h"
#include "improvise/curriculum/performance.h"
#include "improvise/error.h"
#include "improvise/gateway/config.h"
#include "improvise/gateway/content_library.h"
#include "improvise/gateway/engine.h"
#include "improvise/gateway/protocol.h"
#include "improvise/gateway/replay.h"
#include "improvise/midi/smf.h"
#include "performance_oracle.h"
#include "temp_dir.h"

using namespace improvise::gateway;
using improvise::Error;
using improvise::ErrorCode;
using improvise::midi::EventKind;
using improvise::midi::MidiEvent;
using improvise::modes::KeyColor;
using improvise::modes::PressClass;
using LessonMode = improvise::modes::Mode;

namespace {

std::vector<std::string> lines_of(const std::string& name) {
  std::ifstream in(std::string(IMPROVISE_TEST_DATA) + "/" + name);
  REQUIRE(in.good());
  std::vector<std::string> out;
  for (std::string line; std::getline(in, line);) {
    if (!line.empty()) out.push_back(line);
  }
  return out;
}

bool is_client_type(const std::string& type) {
  static const std::vector<std::string> types = {"note_on", "note_off", "set_mode", "toggle_approaches", "set_tempo",
                                                 "set_swing", "select_lesson", "start", "stop", "load_content"};
  return std::find(types.begin(), types.end(), type) != types.end();
}

ErrorCode code_of(const auto& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return ErrorCode::Io;
}

EngineSettings default_settings() { return EngineSettings::from_config(Config{}); }

Engine make_engine() { return Engine(default_settings(), improvise::curriculum::builtin_lessons()); }

template <class T>
std::vector<T> only(const std::vector<ServerMessage>& messages) {
  std::vector<T> out;
  for (const auto& m : messages) {
    if (const auto* p = std::get_if<T>(&m)) out.push_back(*p);
  }
  return out;
}

server::Frame last_frame(const std::vector<ServerMessage>& messages) {
  const auto frames = only<server::Frame>(messages);
  REQUIRE_FALSE(frames.empty());
  return frames.back();
}

std::array<int, 88> colors(const improvise::modes::HighlightFrame& f) {
  std::array<int, 88> out{};
  for (std::size_t i = 0; i < 88; ++i) out[i] = static_cast<int>(f.key_colors[i]);
  return out;
}

std::string name_of(const improvise::modes::HighlightFrame& f) {
  return f.active_chord ? improvise::theory::chord_name(*f.active_chord) : "";
}

std::vector<std::uint8_t> bytes_of(const improvise::midi::MidiFile& f) { return improvise::midi::serialize_smf(f); }

}  // namespace

TEST_CASE("every corpus message survives a parse and serialize round trip") {
  const auto corpus = lines_of("protocol_corpus.jsonl");
  CHECK(corpus.size() >= 30);
  std::set<std::string> seen;
  for (const auto& line : corpus) {
    CAPTURE(line);
    const auto original = Json::parse(line);
    const auto type = original.at("type").get<std::string>();
    seen.insert(type);
    if (is_client_type(type)) {
      const auto m = parse_client_message(line);
      CHECK(client_message_type(m) == type);
      CHECK(Json::parse(serialize(m)) == original);
      CHECK(parse_client_message(serialize(m)) == m);
    } else {
      const auto m = parse_server_message(line);
      CHECK(server_message_type(m) == type);
      CHECK(Json::parse(serialize(m)) == original);
      CHECK(parse_server_message(serialize(m)) == m);
    }
  }
  CHECK(seen.size() == 18);
}

TEST_CASE("malformed client messages are rejected as protocol errors") {
  for (const auto& line : lines_of("protocol_invalid.jsonl")) {
    CAPTURE(line);
    CHECK(code_of([&] { parse_client_message(line); }) == ErrorCode::Protocol);
  }
}

TEST_CASE("note_on maps straight onto the engine event") {
  const auto m = parse_client_message(R"({"type":"note_on","pitch":60,"velocity":80})");
  REQUIRE(std::holds_alternative<client::NoteOn>(m));
  CHECK(std::get<client::NoteOn>(m) == client::NoteOn{60, 80});
  try {
    parse_client_message(R"({"type":"note_on"})");
    FAIL("accepted");
  } catch (const std::exception& e) {
    const auto reply = error_message(e);
    CHECK(reply.code == "Protocol");
    CHECK(reply.message.find("pitch") != std::string::npos);
    CHECK(server_message_type(ServerMessage{reply}) == "error");
  }
}

TEST_CASE("config reads files and environment overrides") {
  testing::TempDir dir;
  const auto path = dir.path() / "config.json";
  write_file_atomically(path, std::string(R"({"port": 9000, "default_key": "F major", "swing_ratio": 1.5})"));
  auto cfg = load_config_file(path);
  CHECK(cfg.port == 9000);
  CHECK(cfg.default_key == "F major");
  CHECK(cfg.swing_ratio == 1.5);
  CHECK(cfg.split_pitch == 60);

  const std::map<std::string, std::string> env = {{"IMPROVISE_PORT", "9100"}, {"IMPROVISE_SPLIT_PITCH", "55"},
                                                  {"IMPROVISE_CONTENT_DIR", "/tmp/x/content"}};
  const EnvLookup lookup = [&](const std::string& k) -> std::optional<std::string> {
    const auto it = env.find(k);
    return it == env.end() ? std::nullopt : std::optional(it->second);
  };
  cfg = apply_env(cfg, lookup);
  CHECK(cfg.port == 9100);
  CHECK(cfg.split_pitch == 55);
  CHECK(cfg.reports_dir() == std::filesystem::path("/tmp/x/reports"));

  CHECK(code_of([&] { config_from_json(Json::parse(R"({"colour": 1})")); }) == ErrorCode::Protocol);
  CHECK(code_of([&] { load_config_file(dir.path() / "missing.json"); }) == ErrorCode::Io);
  const EnvLookup bad = [](const std::string& k) -> std::optional<std::string> {
    if (k == "IMPROVISE_DEFAULT_TEMPO_BPM") return "fast";
    return std::nullopt;
  };
  CHECK(code_of([&] { apply_env(Config{}, bad); }) == ErrorCode::InvalidArgument);
  Config wrong;
  wrong.default_key = "H major";
  CHECK(code_of([&] { validate(wrong); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("content library ingests, deduplicates and survives a restart") {
  testing::TempDir dir;
  const auto riff = improvise::curriculum::builtin_content().at(1).file;
  auto file = riff;
  file.ppq = 96;
  const auto bytes = bytes_of(file);

  ContentId id;
  {
    ContentLibrary lib(dir.path());
    id = lib.ingest(bytes, "Riff", {3});
    REQUIRE(lib.entries().size() == 1);
    CHECK(lib.entries()[0].ppq == 96);
    CHECK(lib.entries()[0].duration_ticks == improvise::midi::duration_ticks(file));
    CHECK(lib.ingest(bytes, "Same bytes again") == id);
    CHECK(lib.entries().size() == 1);
    CHECK(id == content_id_for(bytes));

    const std::vector<std::uint8_t> corrupt = {'R', 'I', 'F', 'F', 0, 0, 0, 6};
    CHECK(code_of([&] { lib.ingest(corrupt, "bad"); }) == ErrorCode::NotSmf);
    CHECK(lib.entries().size() == 1);
    CHECK(code_of([&] { lib.load("c0000000000000000"); }) == ErrorCode::NotFound);
  }
  ContentLibrary reopened(dir.path());
  REQUIRE(reopened.find(id));
  CHECK(reopened.find(id)->title == "Riff");
  CHECK(reopened.load(id) == improvise::midi::parse_smf(bytes));
  reopened.seed_builtins();
  CHECK(reopened.entries().size() == 3);
  CHECK(reopened.find(improvise::curriculum::kQuestionContentId));
}

TEST_CASE("lessons file round trips and falls back to the built-ins") {
  testing::TempDir dir;
  const auto builtin = improvise::curriculum::builtin_lessons();
  CHECK(load_lessons(dir.path(), improvise::theory::PitchClass(0)) == builtin);
  auto edited = builtin;
  edited[0].title = "Swing feel";
  save_lessons(dir.path(), edited);
  CHECK(load_lessons(dir.path(), improvise::theory::PitchClass(0)) == edited);

  write_file_atomically(dir.path() / "lessons.json", std::string(R"({"lessons": [{"id": 9}]})"));
  CHECK_THROWS_AS(load_lessons(dir.path(), improvise::theory::PitchClass(0)), Error);
}

TEST_CASE("engine guided frame follows the chord under the transport") {
  auto engine = make_engine();
  const auto f = engine.frame();
  REQUIRE(f.frame.active_chord);
  CHECK(name_of(f.frame) == "Dm7");
  CHECK(colors(f.frame) == oracle::expected_colors({2, 5, 9, 0}, {}, 60, true));
  CHECK(f.state.mode == LessonMode::GuidedPress);
  CHECK(f.state.key == "C major");
  CHECK_FALSE(f.state.running);
}

TEST_CASE("toggle_approaches shows in the next frame and toggles back exactly") {
  auto engine = make_engine();
  const auto before = engine.frame();
  const auto on = last_frame(engine.handle(client::ToggleApproaches{}));
  CHECK(on.state.approaches_on);
  CHECK(colors(on.frame) ==
        oracle::expected_colors({2, 5, 9, 0}, oracle::half_step_below({2, 5, 9, 0}), 60, true));
  const auto off = last_frame(engine.handle(client::ToggleApproaches{}));
  CHECK(off == before);
}

TEST_CASE("presses are classified and a stopped session reports them") {
  auto engine = make_engine();
  auto out = engine.handle(client::NoteOn{76, 90});
  REQUIRE(only<server::PressClassMsg>(out).size() == 1);
  CHECK(only<server::PressClassMsg>(out)[0].press == PressClass::OutOfSet);

  engine.handle(client::Start{});
  CHECK(engine.state().session == 1);
  engine.handle(client::NoteOn{74, 90});
  engine.handle(client::NoteOff{74, {}});
  engine.handle(client::NoteOn{61, 90});
  out = engine.handle(client::Stop{});
  const auto reports = only<server::Report>(out);
  REQUIRE(reports.size() == 1);
  CHECK(reports[0].report.count(PressClass::ChordToneHit) == 1);
  CHECK(reports[0].report.count(PressClass::OutOfSet) == 1);
  CHECK(reports[0].report.accuracy_percent == 50.0);
  CHECK_FALSE(last_frame(out).state.running);
  CHECK(only<server::Report>(engine.handle(client::Stop{})).empty());
}

TEST_CASE("velocity zero note_on releases the key") {
  auto engine = make_engine();
  engine.handle(client::SetMode{LessonMode::ExpertPress});
  for (int p : {50, 53, 57}) engine.handle(client::NoteOn{p, 80});
  CHECK(engine.frame().frame.active_chord);
  const auto out = engine.handle(client::NoteOn{53, 0});
  CHECK(only<server::PressClassMsg>(out).empty());
  CHECK_FALSE(last_frame(out).frame.active_chord);
}

TEST_CASE("expert chord input is recognized and not scored") {
  auto engine = make_engine();
  engine.handle(client::SetMode{LessonMode::ExpertPress});
  engine.handle(client::Start{});
  std::vector<ServerMessage> out;
  for (int p : {50, 53, 57, 60}) {
    out = engine.handle(client::NoteOn{p, 80});
    CHECK(only<server::PressClassMsg>(out).empty());
  }
  const auto f = last_frame(out);
  REQUIRE(f.frame.active_chord);
  CHECK(name_of(f.frame) == "Dm7");
  out = engine.handle(client::NoteOn{74, 80});
  CHECK(only<server::PressClassMsg>(out).at(0).press == PressClass::ChordToneHit);
  const auto report = std::get<server::Report>(engine.handle(client::Stop{}).at(0)).report;
  CHECK(report.total_presses == 1);
}

TEST_CASE("onwait waits for a chord tone and loops after the last chord") {
  auto engine = make_engine();
  engine.handle(client::SetMode{LessonMode::OnwaitRoll});
  CHECK(name_of(engine.frame().frame) == "Dm7");
  engine.handle(client::NoteOn{73, 80});
  CHECK(name_of(engine.frame().frame) == "Dm7");
  engine.handle(client::NoteOn{74, 80});
  CHECK(name_of(engine.frame().frame) == "G7");
  engine.handle(client::NoteOn{71, 80});
  CHECK(name_of(engine.frame().frame) == "Cmaj7");
  const auto tick_before = engine.frame().frame.frame_tick;
  engine.handle(client::NoteOn{72, 80});
  const auto looped = engine.frame().frame;
  CHECK(name_of(looped) == "Dm7");
  CHECK(looped.frame_tick > tick_before);
}

TEST_CASE("clock advance emits metronome clicks and keeps sub-tick remainders") {
  auto engine = make_engine();
  CHECK(engine.advance_ms(1000).empty());
  engine.handle(client::Start{});
  const auto clicks = only<server::Metronome>(engine.advance_ticks(1920));
  REQUIRE(clicks.size() == 4);
  CHECK(clicks[0] == server::Metronome{0, true});
  CHECK(clicks[3] == server::Metronome{1440, false});
  for (int i = 0; i < 1000; ++i) engine.advance_ms(1.0);
  CHECK(engine.transport().position_tick == 1920 + 960);
  for (int i = 0; i < 60; ++i) engine.advance_ms(1000.0 / 60.0);
  CHECK(engine.transport().position_tick == 1920 + 960 + 960);
}

TEST_CASE("tempo requests wait for the bar line and land in the recording") {
  auto engine = make_engine();
  engine.handle(client::Start{});
  engine.advance_ticks(480);
  engine.handle(client::SetTempo{60});
  CHECK(engine.transport().tempo_bpm == 120.0);
  engine.advance_ticks(1920);
  CHECK(engine.transport().tempo_bpm == 60.0);
  engine.handle(client::NoteOn{72, 80});
  engine.advance_ms(1000);
  engine.handle(client::NoteOff{72, {}});
  engine.handle(client::Stop{});
  const auto& rec = engine.last_recording();
  REQUIRE(rec);
  const auto events = rec->tracks.at(0).events;
  REQUIRE(events.size() == 5);
  CHECK(events[0] == MidiEvent::tempo(500000, 0));
  CHECK(events[1] == MidiEvent::tempo(1000000, 1920));
  CHECK(events[2] == MidiEvent::note_on(0, 72, 80, 2400));
  CHECK(events[3] == MidiEvent::note_off(0, 72, 0, 2880));
  CHECK(events[4].kind == EventKind::MetaEnd);
  CHECK(improvise::midi::parse_smf(improvise::midi::serialize_smf(*rec)) == *rec);
}

TEST_CASE("lesson content plays back swung and looped") {
  auto engine = make_engine();
  const auto selected = engine.handle(client::SelectLesson{3, 0});
  const auto state = last_frame(selected).state;
  CHECK(state.lesson_id == 3);
  CHECK(state.mode == LessonMode::RollingImprov);
  CHECK(state.content_id == improvise::curriculum::kRhythmContentId);
  CHECK(state.swing.ratio == 2.0);
  engine.handle(client::Start{});
  std::vector<std::int64_t> onsets;
  for (const auto& a : only<server::Accompaniment>(engine.advance_ticks(3840))) {
    if (a.event.kind == EventKind::NoteOn) onsets.push_back(a.event.tick);
  }
  CHECK(onsets == std::vector<std::int64_t>{0, 320, 800, 960});
  const auto onsets_next = [&](std::int64_t ticks) {
    std::vector<std::int64_t> out;
    for (const auto& a : only<server::Accompaniment>(engine.advance_ticks(ticks))) {
      if (a.event.kind == EventKind::NoteOn) out.push_back(a.event.tick);
    }
    return out;
  };
  CHECK(onsets_next(1920) == std::vector<std::int64_t>{3840, 4160, 4640, 4800});
  CHECK(onsets_next(1920) == std::vector<std::int64_t>{5760, 6080, 6560, 6720});
}

TEST_CASE("failed requests leave the engine untouched") {
  auto engine = make_engine();
  const auto before = engine.frame();
  CHECK(code_of([&] { engine.handle(client::SelectLesson{9, {}}); }) == ErrorCode::NotFound);
  CHECK(code_of([&] { engine.handle(client::SelectLesson{1, 40}); }) == ErrorCode::NotFound);
  CHECK(code_of([&] { engine.handle(client::LoadContent{"c1234"}); }) == ErrorCode::NotFound);
  CHECK(code_of([&] { engine.advance_ticks(-1); }) == ErrorCode::InvalidArgument);
  CHECK(engine.frame() == before);
}

TEST_CASE("selecting a lesson mid-session closes the session first") {
  auto engine = make_engine();
  engine.handle(client::Start{});
  engine.handle(client::NoteOn{74, 80});
  const auto out = engine.handle(client::SelectLesson{4, 1});
  REQUIRE(out.size() == 2);
  CHECK(std::holds_alternative<server::Report>(out[0]));
  const auto f = std::get<server::Frame>(out[1]);
  CHECK(f.state.lesson_id == 4);
  CHECK(f.state.exercise == 1);
  CHECK(f.state.approaches_on);
  CHECK(f.state.split_pitch == 60);
  CHECK_FALSE(f.state.running);
}

TEST_CASE("hello lists lessons and content then sends a frame") {
  const auto out = make_engine().hello();
  REQUIRE(out.size() == 3);
  CHECK(std::get<server::LessonList>(out[0]).lessons.size() == 6);
  CHECK(std::get<server::LessonList>(out[0]).lessons[0].label == "01 Swing");
  CHECK(std::get<server::ContentList>(out[1]).content.size() == 2);
  CHECK(is_frame(out[2]));
}

TEST_CASE("replay scores synthetic chord-tone performances exactly") {
  const auto lessons = improvise::curriculum::builtin_lessons();
  const ReplayOptions guided{4, 0, 1.0};
  const auto all_in = replay(oracle::performance_file(oracle::ii_v_i_notes(4, 0)), default_settings(), lessons, guided);
  CHECK(all_in.total_presses == 12);
  CHECK(all_in.accuracy_percent == 100.0);
  const auto all_out = replay(oracle::performance_file(oracle::ii_v_i_notes(0, 4)), default_settings(), lessons, guided);
  CHECK(all_out.count(PressClass::OutOfSet) == 12);
  CHECK(all_out.accuracy_percent == 0.0);
  const auto mixed = replay(oracle::performance_file(oracle::ii_v_i_notes(3, 1)), default_settings(), lessons, guided);
  CHECK(mixed.accuracy_percent == 75.0);
  CHECK(mixed.lesson_id == 4);

  improvise::midi::MidiFile empty;
  empty.tracks.emplace_back();
  const auto none = replay(empty, default_settings(), lessons, guided);
  CHECK(none.empty);
  CHECK(none.total_presses == 0);
}

TEST_CASE("replay counts do not depend on speed when the window scales") {
  const auto lessons = improvise::curriculum::builtin_lessons();
  std::mt19937 rng(1234);
  std::uniform_int_distribution<int> pitch(36, 96);
  std::uniform_int_distribution<int> gap(0, 400);
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<oracle::Placed> notes;
    std::int64_t tick = 0;
    for (int i = 0; i < 30; ++i) notes.push_back({pitch(rng), tick += gap(rng)});
    const auto file = oracle::performance_file(notes, 100);
    for (int lesson : {1, 3, 4}) {
      const auto slow = replay(file, default_settings(), lessons, {lesson, 0, 1.0});
      const auto fast = replay(file, default_settings(), lessons, {lesson, 0, 2.0});
      CHECK(slow.counts == fast.counts);
      CHECK(report_to_json(replay(file, default_settings(), lessons, {lesson, 0, 1.0})).dump() ==
            report_to_json(slow).dump());
    }
  }
  CHECK(code_of([&] { replay({}, default_settings(), lessons, {1, 0, 0.0}); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([&] { replay({}, default_settings(), lessons, {7, 0, 1.0}); }) == ErrorCode::NotFound);
}

TEST_CASE("replaying the question content through lesson 5 yields a Q&A result") {
  const auto questions = improvise::curriculum::builtin_content().at(0).file;
  improvise::midi::MidiFile answer;
  answer.ppq = 480;
  answer.tracks.emplace_back();
  auto& ev = answer.tracks.back().events;
  const std::vector<std::pair<int, std::int64_t>> notes = {{72, 0}, {74, 240}, {76, 480}, {79, 960}};
  for (auto [p, t] : notes) {
    ev.push_back(MidiEvent::note_on(0, p, 90, t));
    ev.push_back(MidiEvent::note_off(0, p, 0, t + 200));
  }
  std::stable_sort(ev.begin(), ev.end(), [](const auto& a, const auto& b) { return a.tick < b.tick; });
  const auto report = replay(answer, default_settings(), improvise::curriculum::builtin_lessons(), {5, 0, 1.0});
  REQUIRE(report.qa_results.size() == 1);
  CHECK(report.qa_results[0].rhythm_matched);
  (void)questions;
}
