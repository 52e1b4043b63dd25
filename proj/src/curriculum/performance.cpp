#include "improvise/curriculum/performance.h"

#include <algorithm>

#include "improvise/error.h"

namespace improvise::curriculum {

namespace {

struct Note {
  int pitch;
  std::int64_t onset;
  std::int64_t duration;
};

midi::MidiTrack melody_track(const std::vector<Note>& notes) {
  std::vector<midi::MidiEvent> events;
  events.push_back(midi::MidiEvent::program_change(0, 0, 0));
  for (const auto& n : notes) {
    events.push_back(midi::MidiEvent::note_on(0, n.pitch, 90, n.onset));
    events.push_back(midi::MidiEvent::note_off(0, n.pitch, 0, n.onset + n.duration));
  }
  std::stable_sort(events.begin(), events.end(),
                   [](const midi::MidiEvent& a, const midi::MidiEvent& b) { return a.tick < b.tick; });
  events.push_back(midi::MidiEvent::end_of_track(events.back().tick));
  return {std::move(events)};
}

midi::MidiFile two_track_file(const std::vector<Note>& notes) {
  midi::MidiFile f;
  f.format = 1;
  f.ppq = 480;
  f.tracks.push_back({{midi::MidiEvent::tempo(midi::kDefaultTempoUs, 0), midi::MidiEvent::end_of_track(0)}});
  f.tracks.push_back(melody_track(notes));
  return f;
}

std::vector<midi::MidiEvent> events_of(const recognition::Motif& phrase) {
  std::vector<midi::MidiEvent> out;
  for (const auto& n : phrase.notes()) {
    out.push_back(midi::MidiEvent::note_on(0, n.pitch.number(), 90, n.onset_tick));
    out.push_back(midi::MidiEvent::note_off(0, n.pitch.number(), 0, n.onset_tick + n.duration_ticks));
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const midi::MidiEvent& a, const midi::MidiEvent& b) { return a.tick < b.tick; });
  return out;
}

recognition::MotifRelation sequence_or_variation(const recognition::Motif& a, const recognition::Motif& b,
                                                 const theory::Scale& scale, std::int64_t tolerance) {
  try {
    if (const auto shift = recognition::is_sequence(a, b, scale, tolerance)) {
      return {recognition::RelationKind::Sequence, *shift};
    }
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NotDiatonic) throw;
  }
  return recognition::classify_variation(a, b, tolerance);
}

}  // namespace

std::vector<BuiltinContent> builtin_content() {
  // Two calls, each followed by a bar of space for the answer.
  const std::vector<Note> questions{
      {60, 0, 200},    {62, 240, 200},  {64, 480, 200},  {67, 960, 400},
      {67, 3840, 400}, {65, 4320, 200}, {64, 4560, 200}, {62, 4800, 400},
  };
  // A riff and its sequence a step lower.
  const std::vector<Note> riff{
      {64, 0, 200},    {67, 240, 200},  {69, 720, 200},  {67, 960, 400},
      {62, 3840, 200}, {65, 4080, 200}, {67, 4560, 200}, {65, 4800, 400},
  };
  return {
      {kQuestionContentId, "Question phrases", {3, 5}, two_track_file(questions)},
      {kRhythmContentId, "Rhythm riff", {3}, two_track_file(riff)},
  };
}

std::vector<recognition::Motif> question_motifs(const midi::MidiFile& file, const QAConfig& cfg) {
  const auto events = midi::merged_events(file);
  return recognition::segment_motifs(events, cfg.segmentation);
}

PerformanceResults evaluate_performance(const Exercise& exercise, std::span<const midi::MidiEvent> learner_events,
                                        std::span<const recognition::Motif> questions, const QAConfig& cfg) {
  PerformanceResults out;
  if (exercise.evaluation == Evaluation::PressAccuracy) return out;
  const auto phrases = recognition::segment_motifs(learner_events, cfg.segmentation);

  switch (exercise.evaluation) {
    case Evaluation::MotifRepeat:
    case Evaluation::FreeImprov:
      for (std::size_t i = 1; i < phrases.size(); ++i) {
        out.motif_results.push_back(recognition::classify_variation(phrases[i - 1], phrases[i], cfg.tick_tolerance));
      }
      break;
    case Evaluation::MotifSequence: {
      const auto scale = exercise.scale.value_or(theory::key_scale(exercise.key));
      for (std::size_t i = 1; i < phrases.size(); ++i) {
        out.motif_results.push_back(sequence_or_variation(phrases[i - 1], phrases[i], scale, cfg.tick_tolerance));
      }
      break;
    }
    case Evaluation::RhythmMatch:
    case Evaluation::QaExchange:
      if (questions.empty()) break;
      for (std::size_t i = 0; i < phrases.size(); ++i) {
        const auto answer = events_of(phrases[i]);
        out.qa_results.push_back(qa_exchange(questions[i % questions.size()], answer, cfg));
      }
      break;
    case Evaluation::PressAccuracy:
      break;
  }
  return out;
}

}  // namespace improvise::curriculum
