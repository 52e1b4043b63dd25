#include <random>

#include "doctest.h"
#include "improvise/error.h"
#include "improvise/recognition/chord_recognizer.h"
#include "improvise/recognition/motif.h"
#include "oracles.h"
#include "voicings.h"

using namespace improvise::recognition;
using namespace improvise::theory;
using improvise::Error;
using improvise::ErrorCode;
using improvise::midi::MidiEvent;

namespace {

std::set<int> to_std(PitchClassSet s) {
  std::set<int> out;
  for (auto pc : s.to_vector()) out.insert(pc.value());
  return out;
}

HeldNotes held_of(const std::vector<int>& pitches) {
  HeldNotes h;
  for (int p : pitches) h.press(Pitch(p));
  return h;
}

// Notes at one per beat (480 ticks), each held for a quarter beat less.
Motif motif(std::initializer_list<int> pitches, std::int64_t start = 0, std::int64_t step = 480,
            std::int64_t dur = 360) {
  std::vector<MotifNote> notes;
  std::int64_t t = start;
  for (int p : pitches) {
    notes.push_back({Pitch(p), t, dur});
    t += step;
  }
  return Motif(notes);
}

const Scale kCIonian{PitchClass(0), Mode::Ionian};

}  // namespace

TEST_CASE("held notes keep distinct pitches sorted") {
  HeldNotes h;
  h.press(Pitch(64), 10.0);
  h.press(Pitch(60), 20.0);
  h.press(Pitch(64), 30.0);
  REQUIRE(h.size() == 2);
  CHECK(h.notes()[0].pitch == Pitch(60));
  CHECK(h.notes()[1].onset_ms == 10.0);
  h.release(Pitch(60));
  CHECK(h.lowest() == Pitch(64));
  h.release(Pitch(99));
  CHECK(h.size() == 1);
  CHECK(held_of({40, 55, 60, 72}).below(Pitch(60)).size() == 2);
}

TEST_CASE("recognize_chord examples") {
  auto c = recognize_chord(held_of({64, 67, 71, 72}));
  REQUIRE(c);
  CHECK(*c == Chord{PitchClass(0), ChordQuality::Maj7});

  CHECK_FALSE(recognize_chord(held_of({60, 62})).has_value());

  c = recognize_chord(held_of({50, 53, 57, 60}));
  REQUIRE(c);
  CHECK(*c == Chord{PitchClass(2), ChordQuality::Min7});
}

TEST_CASE("ambiguous sets resolve by bass note then smallest root") {
  // F A C D: F6 when F is in the bass
  auto c = recognize_chord(held_of({53, 57, 60, 62}));
  REQUIRE(c);
  CHECK(*c == Chord{PitchClass(5), ChordQuality::Maj6});
  // dim7 rotations: bass Eb selects Eb dim7
  c = recognize_chord(held_of({51, 54, 57, 60}));
  REQUIRE(c);
  CHECK(*c == Chord{PitchClass(3), ChordQuality::Dim7});
  // Disabling maj6 leaves Dm7 as the only reading even with F in the bass.
  const std::vector<ChordQuality> no_six = {ChordQuality::Min7, ChordQuality::Maj7};
  c = recognize_chord(held_of({53, 57, 60, 62}), no_six);
  REQUIRE(c);
  CHECK(*c == Chord{PitchClass(2), ChordQuality::Min7});
}

TEST_CASE("three pitch classes needed even with many keys held") {
  CHECK_FALSE(recognize_chord(held_of({48, 60, 72, 55, 67})).has_value());
  auto triad = recognize_chord(held_of({48, 60, 64, 67}));
  REQUIRE(triad);
  CHECK(*triad == Chord{PitchClass(0), ChordQuality::TriadMaj});
}

TEST_CASE("recognition is voicing invariant for every chord") {
  std::mt19937 rng(1234);
  for (auto q : kAllQualities) {
    for (int root = 0; root < 12; ++root) {
      const Chord chord{PitchClass(root), q};
      const auto tones = to_std(chord_tones(chord));
      for (int i = 0; i < 20; ++i) {
        const auto got = recognize_chord(held_of(testgen::random_voicing(tones, rng)));
        REQUIRE(got);
        CHECK(chord_tones(*got) == chord_tones(chord));
      }
    }
  }
}

TEST_CASE("random non-matching sets return none, agreeing with brute force") {
  std::mt19937 rng(555);
  std::uniform_int_distribution<int> mask(0, 0xFFF);
  int checked = 0;
  while (checked < 300) {
    std::set<int> pcs;
    const int m = mask(rng);
    for (int pc = 0; pc < 12; ++pc) {
      if ((m >> pc) & 1) pcs.insert(pc);
    }
    const bool matches = !oracle::matching_chords(pcs).empty();
    if (pcs.empty()) continue;
    const auto got = recognize_chord(held_of(testgen::random_voicing(pcs, rng)));
    if (pcs.size() < 3 || !matches) {
      CHECK_FALSE(got.has_value());
      ++checked;
    } else {
      REQUIRE(got);
      CHECK(to_std(chord_tones(*got)) == pcs);
    }
  }
}

TEST_CASE("motif invariants") {
  CHECK_THROWS_AS(Motif({{Pitch(60), 0, 100}}), Error);
  CHECK_THROWS_AS(Motif({{Pitch(60), 0, 100}, {Pitch(62), 0, 100}}), Error);
  CHECK_NOTHROW(Motif({{Pitch(60), 0, 100}, {Pitch(62), 1, 100}}));
}

TEST_CASE("is_repeat examples") {
  const auto a = motif({60, 62, 64});
  CHECK(is_repeat(a, a, 0));
  CHECK(is_repeat(a, a.shifted(1920), 0));
  CHECK_FALSE(is_repeat(a, motif({60, 62, 65}), 0));
  CHECK_FALSE(is_repeat(a, motif({60, 62}), 1000));
  CHECK(is_repeat(a, motif({60, 62, 64}, 0, 500), 40));
  CHECK_FALSE(is_repeat(a, motif({60, 62, 64}, 0, 500), 39));
}

TEST_CASE("is_sequence examples") {
  const auto a = motif({60, 62, 64});
  const auto b = motif({62, 64, 65}, 1920);
  CHECK(is_sequence(a, b, kCIonian, kDefaultTickTolerance) == 1);
  CHECK_FALSE(is_sequence(a, a, kCIonian, kDefaultTickTolerance).has_value());
  CHECK(is_sequence(b, a, kCIonian, kDefaultTickTolerance) == -1);
  // up a diatonic third, crossing the octave
  CHECK(is_sequence(motif({67, 69, 71}), motif({71, 72, 74}), kCIonian, 0) == 2);
  // C-E-G up one step is D-F-A: diatonic, not a whole-tone transposition
  CHECK(is_sequence(motif({60, 64, 67}), motif({62, 65, 69}), kCIonian, 0) == 1);
  // rhythm must match as well
  CHECK_FALSE(is_sequence(a, motif({62, 64, 65}, 0, 960), kCIonian, 60).has_value());

  try {
    is_sequence(motif({60, 61}), a, kCIonian, 0);
    FAIL("expected NotDiatonic");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotDiatonic);
  }
}

TEST_CASE("is_sequence agrees with a brute-force shift search and is antisymmetric") {
  const Scale d_dorian{PitchClass(2), Mode::Dorian};
  std::mt19937 rng(42);
  std::vector<int> diatonic;
  for (int p = 48; p <= 84; ++p) {
    if (scale_set(d_dorian).contains(PitchClass(p))) diatonic.push_back(p);
  }
  std::uniform_int_distribution<std::size_t> idx(0, diatonic.size() - 1);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<MotifNote> na, nb;
    const int len = 2 + trial % 4;
    const int k = static_cast<int>(trial % 15) - 7;
    std::int64_t t = 0;
    bool ok = true;
    for (int i = 0; i < len; ++i) {
      const int p = diatonic[idx(rng)];
      const int deg = *absolute_degree(d_dorian, p) + k;
      const int q = pitch_at_absolute_degree(d_dorian, deg);
      if (q < 0 || q > 127) ok = false;
      na.push_back({Pitch(p), t, 200});
      if (ok) nb.push_back({Pitch(q), t + 960, 200});
      t += 240;
    }
    if (!ok) continue;
    const Motif a(na), b(nb);
    // brute-force: try every shift in [-7, 7]
    std::optional<int> expected;
    for (int s = -7; s <= 7; ++s) {
      if (s == 0) continue;
      bool all = true;
      for (int i = 0; i < len; ++i) {
        all = all && pitch_at_absolute_degree(d_dorian, *absolute_degree(d_dorian, na[i].pitch.number()) + s) ==
                         nb[i].pitch.number();
      }
      if (all) expected = s;
    }
    CHECK(is_sequence(a, b, d_dorian, 0) == expected);
    if (expected) CHECK(is_sequence(b, a, d_dorian, 0) == -*expected);
  }
}

TEST_CASE("classify_variation examples") {
  const auto a = motif({60, 62, 64});
  CHECK(classify_variation(a, a, 0).kind == RelationKind::Repeat);
  CHECK(classify_variation(a, motif({60, 62, 64}, 0, 480, 720), 60).kind == RelationKind::RhythmicVariation);
  CHECK(classify_variation(a, motif({60, 62, 67}), 60).kind == RelationKind::MelodicVariation);
  CHECK(classify_variation(a, motif({65, 67}, 0, 240), 60).kind == RelationKind::Unrelated);
}

TEST_CASE("classify_variation never claims repeat when is_repeat is false") {
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> pitch(60, 64), gap(200, 300);
  for (int i = 0; i < 500; ++i) {
    std::vector<MotifNote> na, nb;
    std::int64_t ta = 0, tb = 0;
    for (int k = 0; k < 3; ++k) {
      na.push_back({Pitch(pitch(rng)), ta, 100});
      nb.push_back({Pitch(pitch(rng)), tb, 100});
      ta += gap(rng);
      tb += gap(rng);
    }
    const Motif a(na), b(nb);
    const bool rep = is_repeat(a, b, 30);
    CHECK((classify_variation(a, b, 30).kind == RelationKind::Repeat) == rep);
    CHECK(is_repeat(a, b, 30) == is_repeat(b, a, 30));
  }
}

TEST_CASE("rhythmic_match examples") {
  CHECK(rhythmic_match(motif({60, 62, 64}), motif({70, 65, 61}), 0));
  CHECK_FALSE(rhythmic_match(motif({60, 62, 64}), motif({60, 62}), 1000));
  const Motif a({{Pitch(60), 0, 10}, {Pitch(60), 480, 10}, {Pitch(60), 720, 10}, {Pitch(60), 960, 10}});
  const Motif b({{Pitch(62), 0, 10}, {Pitch(62), 480, 10}, {Pitch(62), 720, 10}, {Pitch(62), 961, 10}});
  CHECK(rhythmic_match(a, b, 10));
  CHECK_FALSE(rhythmic_match(a, b, 0));
}

TEST_CASE("phrase segmentation on rests and length cap") {
  std::vector<MidiEvent> ev;
  auto note = [&](int pitch, std::int64_t on, std::int64_t off) {
    ev.push_back(MidiEvent::note_on(0, pitch, 80, on));
    ev.push_back(MidiEvent::note_off(0, pitch, 0, off));
  };
  note(60, 0, 200);
  note(62, 240, 440);
  note(64, 480, 700);
  // rest of 480 ticks after 700 -> boundary at 1180
  note(65, 1180, 1300);
  note(67, 1400, 1500);
  std::stable_sort(ev.begin(), ev.end(), [](auto& a, auto& b) { return a.tick < b.tick; });
  const auto phrases = segment_phrases(ev, SegmentationRule{});
  REQUIRE(phrases.size() == 2);
  CHECK(phrases[0].size() == 3);
  CHECK(phrases[0][2].duration_ticks == 220);
  CHECK(phrases[1].front().onset_tick == 1180);

  SegmentationRule capped;
  capped.max_notes = 2;
  CHECK(segment_phrases(ev, capped).size() == 3);
  CHECK(segment_motifs(ev, capped).size() == 2);  // trailing single note dropped
}

TEST_CASE("segmentation keeps the top of simultaneous onsets and closes open notes") {
  std::vector<MidiEvent> ev = {
      MidiEvent::note_on(0, 48, 80, 0), MidiEvent::note_on(0, 64, 80, 0), MidiEvent::note_on(0, 67, 80, 240),
      MidiEvent::note_off(0, 64, 0, 240), MidiEvent::note_off(0, 48, 0, 480)};
  SegmentationRule rule;
  const auto phrases = segment_phrases(ev, rule);
  REQUIRE(phrases.size() == 1);
  REQUIRE(phrases[0].size() == 2);
  CHECK(phrases[0][0].pitch == Pitch(64));
  CHECK(phrases[0][1].duration_ticks == 240);

  rule.min_pitch = 60;
  CHECK(segment_phrases(ev, rule)[0][0].pitch == Pitch(64));
}
