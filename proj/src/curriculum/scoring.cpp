#include "improvise/curriculum/scoring.h"

#include <cmath>

#include "improvise/error.h"

namespace improvise::curriculum {

QAResult qa_exchange(const recognition::Motif& question, std::span<const midi::MidiEvent> answer_events,
                     const QAConfig& cfg) {
  const auto phrases = recognition::segment_phrases(answer_events, cfg.segmentation);
  if (phrases.empty()) throw Error(ErrorCode::EmptyAnswer, "the answer contains no notes");
  if (phrases.size() != 1) {
    throw Error(ErrorCode::InvalidMotif,
                "the answer splits into " + std::to_string(phrases.size()) + " phrases, expected one");
  }
  recognition::Motif answer(phrases.front());
  QAResult result{question, answer, recognition::classify_variation(question, answer, cfg.tick_tolerance),
                  recognition::rhythmic_match(question, answer, cfg.tick_tolerance)};
  return result;
}

SessionReport score_session(std::span<const ClassifiedPress> classified,
                            std::vector<recognition::MotifRelation> motif_results, std::vector<QAResult> qa_results,
                            int lesson_id) {
  SessionReport r;
  r.lesson_id = lesson_id;
  double timing_sum = 0.0;
  for (const auto& c : classified) {
    ++r.counts[static_cast<std::size_t>(c.press)];
    ++r.total_presses;
    if (c.timing_error_ms) {
      timing_sum += std::abs(*c.timing_error_ms);
      ++r.timed_presses;
    }
  }
  r.empty = r.total_presses == 0;
  if (!r.empty) {
    const int correct = r.count(modes::PressClass::ChordToneHit) + r.count(modes::PressClass::ApproachHit);
    r.accuracy_percent = 100.0 * correct / r.total_presses;
  }
  if (r.timed_presses > 0) r.mean_abs_timing_error_ms = timing_sum / r.timed_presses;
  r.motif_results = std::move(motif_results);
  r.qa_results = std::move(qa_results);
  return r;
}

}  // namespace improvise::curriculum
