#pragma once

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "improvise/midi/event.h"
#include "improvise/modes/modes.h"
#include "improvise/recognition/motif.h"

namespace improvise::curriculum {

struct QAConfig {
  recognition::SegmentationRule segmentation;
  std::int64_t tick_tolerance = recognition::kDefaultTickTolerance;
};

struct QAResult {
  recognition::Motif question;
  recognition::Motif answer;
  recognition::MotifRelation relation;
  bool rhythm_matched = false;

  friend bool operator==(const QAResult&, const QAResult&) = default;
};

/// Compares the learner's answer phrase with the question.
/// Throws Error(EmptyAnswer) when the events hold no notes, and Error(InvalidMotif)
/// unless they segment into exactly one phrase of two or more notes.
QAResult qa_exchange(const recognition::Motif& question, std::span<const midi::MidiEvent> answer_events,
                     const QAConfig& cfg = {});

struct ClassifiedPress {
  midi::MidiEvent event;
  modes::PressClass press = modes::PressClass::OutOfSet;
  std::optional<double> timing_error_ms;

  friend bool operator==(const ClassifiedPress&, const ClassifiedPress&) = default;
};

struct SessionReport {
  int lesson_id = 0;
  std::array<int, 6> counts{};  ///< Indexed by PressClass.
  int total_presses = 0;
  double accuracy_percent = 0.0;
  bool empty = true;
  double mean_abs_timing_error_ms = 0.0;
  int timed_presses = 0;
  std::vector<recognition::MotifRelation> motif_results;
  std::vector<QAResult> qa_results;

  int count(modes::PressClass c) const { return counts[static_cast<std::size_t>(c)]; }

  friend bool operator==(const SessionReport&, const SessionReport&) = default;
};

/// Accuracy counts chord-tone and approach hits over all classified presses.
/// The timing average covers only presses that carried a timing error.
SessionReport score_session(std::span<const ClassifiedPress> classified,
                            std::vector<recognition::MotifRelation> motif_results, std::vector<QAResult> qa_results,
                            int lesson_id);

}  // namespace improvise::curriculum
