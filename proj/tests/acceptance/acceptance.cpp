// One line per acceptance criterion: PASS|FAIL <name> (<detail>; <elapsed> ms, budget <n> ms).

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "frame_oracle.h"
#include "golden.h"
#include "improvise/clock/swing.h"
#include "improvise/curriculum/lesson.h"
#include "improvise/gateway/engine_loop.h"
#include "improvise/gateway/replay.h"
#include "improvise/gateway/server.h"
#include "improvise/midi/smf.h"
#include "improvise/midi/vlq.h"
#include "improvise/modes/modes.h"
#include "improvise/recognition/chord_recognizer.h"
#include "improvise/theory/approaches.h"
#include "improvise/theory/progression.h"
#include "oracles.h"
#include "performance_oracle.h"
#include "random_midi.h"
#include "voicings.h"
#include "ws_client.h"

using namespace improvise;
using namespace improvise::theory;

namespace {

constexpr double kTheoryBudgetMs = 1000;
constexpr double kProgressionBudgetMs = 1000;
constexpr double kRecognitionBudgetMs = 5000;
constexpr double kCodecBudgetMs = 10000;
constexpr double kSwingBudgetMs = 1000;
constexpr double kUntimedBudgetMs = 60000;
constexpr double kLatencyMedianMs = 10.0;
constexpr double kLatencyP99Ms = 20.0;
constexpr int kLatencySamples = 2000;
constexpr int kVoicingsPerChord = 200;
constexpr int kNonMatchingSets = 1000;
constexpr int kRandomFiles = 500;

struct Outcome {
  bool ok = true;
  std::string detail;
  int failures = 0;

  void expect(bool condition) {
    if (!condition) {
      ok = false;
      ++failures;
    }
  }
};

std::set<int> to_std(PitchClassSet s) {
  std::set<int> out;
  for (auto pc : s.to_vector()) out.insert(pc.value());
  return out;
}

Outcome theory_suite() {
  Outcome o;
  int chords = 0;
  for (auto q : kAllQualities) {
    for (int root = 0; root < 12; ++root, ++chords) {
      const Chord c{PitchClass(root), q};
      const auto tones = chord_tones(c);
      o.expect(to_std(tones) == oracle::transpose_chord_on_c(std::string(quality_name(q)), root));
      o.expect((half_step_approaches(c) & tones).empty());
      o.expect((half_step_approaches(c, HalfStepDirection::Above) & tones).empty());
      for (int tonic = 0; tonic < 12; ++tonic) {
        for (auto mode : kAllModes) {
          const Scale s{PitchClass(tonic), mode};
          if (scale_set(s).minus(tones).empty()) continue;
          const auto above = scale_above_approaches(c, s);
          o.expect((above & tones).empty());
          o.expect(to_std(above) ==
                   oracle::next_scale_tone_above(to_std(tones), oracle::mode_by_rotation(tonic, static_cast<int>(mode))));
        }
      }
    }
  }
  int scales = 0;
  for (int tonic = 0; tonic < 12; ++tonic) {
    for (auto mode : kAllModes) {
      ++scales;
      const auto pcs = scale_pitch_classes(Scale{PitchClass(tonic), mode});
      std::vector<int> got;
      for (auto pc : pcs) got.push_back(pc.value());
      o.expect(got == oracle::mode_by_rotation(tonic, static_cast<int>(mode)));
    }
  }
  o.detail = std::to_string(chords) + " chords, " + std::to_string(scales) + " scales";
  return o;
}

Outcome progressions() {
  Outcome o;
  int checked = 0;
  for (int tonic = 0; tonic < 12; ++tonic) {
    for (bool six : {false, true}) {
      const auto realized = realize_progression(six ? two_five_one_six() : two_five_one(),
                                                Key{PitchClass(tonic), Tonality::Major}, 480);
      const auto expected = oracle::two_five_one_in_major(tonic, six);
      o.expect(realized.size() == expected.size());
      for (std::size_t i = 0; i < std::min(realized.size(), expected.size()); ++i) {
        o.expect(realized[i].chord.root.value() == expected[i].root);
        o.expect(quality_name(realized[i].chord.quality) == expected[i].quality);
      }
      ++checked;
    }
  }
  o.detail = std::to_string(checked) + " progressions in 12 keys";
  return o;
}

recognition::HeldNotes held_of(const std::vector<int>& pitches) {
  recognition::HeldNotes h;
  for (int p : pitches) h.press(Pitch(p));
  return h;
}

Outcome chord_recognition() {
  Outcome o;
  std::mt19937 rng(2024);
  int voicings = 0;
  for (auto q : kAllQualities) {
    for (int root = 0; root < 12; ++root) {
      const auto tones = oracle::transpose_chord_on_c(std::string(quality_name(q)), root);
      for (int i = 0; i < kVoicingsPerChord; ++i, ++voicings) {
        const auto got = recognition::recognize_chord(held_of(testgen::random_voicing(tones, rng)));
        o.expect(got.has_value() && to_std(chord_tones(*got)) == tones);
      }
    }
  }
  int rejected = 0;
  std::uniform_int_distribution<int> mask(1, 0xFFF);
  while (rejected < kNonMatchingSets) {
    std::set<int> pcs;
    const int m = mask(rng);
    for (int pc = 0; pc < 12; ++pc) {
      if ((m >> pc) & 1) pcs.insert(pc);
    }
    if (pcs.size() >= 3 && !oracle::matching_chords(pcs).empty()) continue;
    o.expect(!recognition::recognize_chord(held_of(testgen::random_voicing(pcs, rng))).has_value());
    ++rejected;
  }
  o.detail = std::to_string(voicings) + " voicings, " + std::to_string(rejected) + " non-matching sets";
  return o;
}

Outcome codec() {
  Outcome o;
  std::mt19937 rng(500);
  for (int i = 0; i < kRandomFiles; ++i) {
    const auto f = testgen::random_file(rng);
    o.expect(midi::parse_smf(midi::serialize_smf(f)) == f);
  }
  int vlq_values = 0;
  const std::uint32_t edges[] = {0, 0x7F, 0x80, 0x3FFF, 0x4000, 0x1FFFFF, 0x200000, midi::kMaxVlq};
  const std::size_t lengths[] = {1, 1, 2, 2, 3, 3, 4, 4};
  for (std::size_t i = 0; i < std::size(edges); ++i) {
    for (std::int64_t d = -2; d <= 2; ++d) {
      const std::int64_t v = static_cast<std::int64_t>(edges[i]) + d;
      if (v < 0 || v > midi::kMaxVlq) continue;
      const auto bytes = midi::encode_vlq(static_cast<std::uint32_t>(v));
      const auto back = midi::decode_vlq(bytes);
      o.expect(back.value == v && back.consumed == bytes.size());
      if (d == 0) o.expect(bytes.size() == lengths[i]);
      ++vlq_values;
    }
  }
  const std::vector<std::uint8_t> minimal = {0x4D, 0x54, 0x68, 0x64, 0x00, 0x00, 0x00, 0x06, 0x00, 0x00, 0x00, 0x01,
                                             0x01, 0xE0, 0x4D, 0x54, 0x72, 0x6B, 0x00, 0x00, 0x00, 0x0D, 0x00, 0x90,
                                             0x3C, 0x40, 0x83, 0x60, 0x80, 0x3C, 0x40, 0x00, 0xFF, 0x2F, 0x00};
  const auto f = midi::parse_smf(minimal);
  o.expect(f.tracks.size() == 1 && f.tracks[0].events.size() == 3);
  if (f.tracks.size() == 1 && f.tracks[0].events.size() == 3) {
    o.expect(f.tracks[0].events[0] == midi::MidiEvent::note_on(0, 60, 64, 0));
    o.expect(f.tracks[0].events[1] == midi::MidiEvent::note_off(0, 60, 64, 480));
    o.expect(f.tracks[0].events[2].kind == midi::EventKind::MetaEnd);
  }
  o.detail = std::to_string(kRandomFiles) + " files, " + std::to_string(vlq_values) + " VLQ boundary values, minimal file";
  return o;
}

Outcome swing() {
  Outcome o;
  std::int64_t worst = 0;
  for (double ratio : {1.0, 1.5, 2.0, 3.0}) {
    for (auto sub : {clock::Subdivision::Eighth, clock::Subdivision::Sixteenth}) {
      const clock::SwingProfile p{ratio, sub};
      for (std::int64_t t = 0; t < 1920; ++t) {
        const auto back = clock::remove_swing(p, clock::apply_swing(p, t, 480), 480);
        worst = std::max(worst, std::abs(back - t));
      }
    }
  }
  o.expect(worst <= 1);
  o.expect(clock::apply_swing({2.0, clock::Subdivision::Eighth}, 240, 480) == 320);
  o.detail = "max round-trip error " + std::to_string(worst) + " tick, 240->" +
             std::to_string(clock::apply_swing({2.0, clock::Subdivision::Eighth}, 240, 480));
  return o;
}

Outcome determinism() {
  Outcome o;
  const auto first = golden::rolling_session_lines();
  const auto second = golden::rolling_session_lines();
  const auto stored = golden::read_lines(golden::kRollingFile);
  o.expect(first == second);
  o.expect(first == stored);
  o.detail = std::to_string(first.size()) + " frames vs " + std::to_string(stored.size()) + " golden";
  return o;
}

Outcome onwait_gating() {
  Outcome o;
  std::mt19937 rng(77);
  modes::ModeConfig cfg;
  cfg.mode = modes::Mode::OnwaitRoll;
  int streams = 0;
  for (int trial = 0; trial < 2000; ++trial, ++streams) {
    const Key key{PitchClass(static_cast<int>(rng() % 12)), Tonality::Major};
    modes::OnWaitState s;
    s.realized = realize_progression(rng() % 2 ? two_five_one_six() : two_five_one(), key, 480);
    const int k = trial % 3 == 0 ? 0 : std::uniform_int_distribution<int>(1, 8)(rng);
    int in_set = 0;
    std::size_t advances = 0;
    for (int step = 0; step < 80; ++step) {
      midi::MidiEvent e;
      const bool hit = in_set < k && rng() % 3 == 0;
      if (hit) {
        if (s.finished()) break;
        const auto& c = s.realized[s.index].chord;
        const auto tones = oracle::transpose_chord_on_c(std::string(quality_name(c.quality)), c.root.value());
        auto it = tones.begin();
        std::advance(it, static_cast<long>(rng() % tones.size()));
        e = midi::MidiEvent::note_on(0, 60 + *it + 12 * static_cast<int>(rng() % 3), 80, 0);
        ++in_set;
      } else if (rng() % 2 == 0) {
        e = midi::MidiEvent::note_on(0, std::uniform_int_distribution<int>(21, 59)(rng), 80, 0);
      } else {
        if (s.finished()) continue;
        const auto& c = s.realized[s.index].chord;
        const auto tones = oracle::transpose_chord_on_c(std::string(quality_name(c.quality)), c.root.value());
        int p = 0;
        do p = std::uniform_int_distribution<int>(60, 108)(rng);
        while (tones.count(p % 12));
        e = midi::MidiEvent::note_on(0, p, 80, 0);
      }
      const auto before = s.index;
      s = modes::onwait_step(s, e, key, cfg).first;
      advances += s.index - before;
    }
    o.expect(advances == std::min<std::size_t>(static_cast<std::size_t>(in_set), s.realized.size()));
    if (k == 0) o.expect(advances == 0);
  }
  o.detail = std::to_string(streams) + " random streams";
  return o;
}

Outcome replay_scores() {
  Outcome o;
  const auto settings = gateway::EngineSettings::from_config(gateway::Config{});
  const auto lessons = curriculum::builtin_lessons();
  const gateway::ReplayOptions guided{4, 0, 1.0};
  const auto score = [&](int in_set, int out_of_set) {
    return gateway::replay(oracle::performance_file(oracle::ii_v_i_notes(in_set, out_of_set)), settings, lessons, guided)
        .accuracy_percent;
  };
  const double all_in = score(4, 0);
  const double all_out = score(0, 4);
  const double mixed = score(3, 1);
  o.expect(all_in == 100.0);
  o.expect(all_out == 0.0);
  o.expect(mixed == 75.0);
  char buf[96];
  std::snprintf(buf, sizeof buf, "chord tones %.1f, out of set %.1f, 3:1 mix %.1f", all_in, all_out, mixed);
  o.detail = buf;
  return o;
}

Outcome latency() {
  Outcome o;
  gateway::EngineLoop loop(gateway::Engine(gateway::EngineSettings::from_config(gateway::Config{}),
                                           curriculum::builtin_lessons()));
  gateway::Server server(loop, 0, "127.0.0.1");
  loop.start();
  server.start();
  std::vector<double> samples;
  {
    testing::WsClient client(server.port());
    client.send(R"({"type":"set_mode","mode":"rolling_improv"})");
    client.send(R"({"type":"start"})");
    using SteadyClock = std::chrono::steady_clock;
    for (int i = 0; i < kLatencySamples; ++i) {
      const int pitch = 60 + i % 24;
      const auto sent = SteadyClock::now();
      client.send(R"({"type":"note_on","pitch":)" + std::to_string(pitch) + R"(,"velocity":80})");
      client.read_until("press_class");
      client.read_until("frame");
      samples.push_back(std::chrono::duration<double, std::milli>(SteadyClock::now() - sent).count());
      client.send(R"({"type":"note_off","pitch":)" + std::to_string(pitch) + "}");
    }
  }
  server.stop();
  loop.stop();
  std::sort(samples.begin(), samples.end());
  const double median = samples[samples.size() / 2];
  const double p99 = samples[static_cast<std::size_t>(static_cast<double>(samples.size()) * 0.99)];
  o.expect(median < kLatencyMedianMs);
  o.expect(p99 < kLatencyP99Ms);
  char buf[128];
  std::snprintf(buf, sizeof buf, "WebSocket note_on to frame over %d presses: median %.3f ms, p99 %.3f ms",
                kLatencySamples, median, p99);
  o.detail = buf;
  return o;
}

struct Criterion {
  const char* name;
  double budget_ms;
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {"theory_oracle_suite", kTheoryBudgetMs, theory_suite},
      {"progression_realization", kProgressionBudgetMs, progressions},
      {"chord_recognition", kRecognitionBudgetMs, chord_recognition},
      {"smf_codec", kCodecBudgetMs, codec},
      {"swing_round_trip", kSwingBudgetMs, swing},
      {"mode_determinism_golden", kUntimedBudgetMs, determinism},
      {"onwait_gating", kUntimedBudgetMs, onwait_gating},
      {"end_to_end_replay", kUntimedBudgetMs, replay_scores},
      {"latency_budget", kUntimedBudgetMs, latency},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail = std::string("threw: ") + e.what();
    }
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    const bool ok = o.ok && ms < c.budget_ms;
    if (!ok) ++failed;
    std::printf("%s %s (%s; %d failed checks; %.1f ms, budget %.0f ms)\n", ok ? "PASS" : "FAIL", c.name,
                o.detail.c_str(), o.failures, ms, c.budget_ms);
  }
  const bool headless = IMPROVISE_UI_CLIENT_BUILT == 0;
  std::printf("%s headless_primary_suite (%zu criteria ran in-process with %s; %d failed)\n",
              headless && failed == 0 ? "PASS" : "FAIL", criteria.size(),
              headless ? "no UI client in the build" : "a UI client target in the build", failed);
  if (!headless) ++failed;
  return failed == 0 ? 0 : 1;
}
