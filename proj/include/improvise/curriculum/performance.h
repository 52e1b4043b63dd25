#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "improvise/curriculum/lesson.h"
#include "improvise/curriculum/scoring.h"
#include "improvise/midi/smf.h"

namespace improvise::curriculum {

/// @brief A MIDI file the content library seeds on first start.
struct BuiltinContent {
  ContentId id;
  std::string title;
  std::vector<int> lesson_tags;
  midi::MidiFile file;
};

/// Question phrases for Q&A and a riff for rhythm practice, both in C at 480 ppq.
std::vector<BuiltinContent> builtin_content();

/// The phrases of a content file, read as questions.
std::vector<recognition::Motif> question_motifs(const midi::MidiFile& file, const QAConfig& cfg = {});

struct PerformanceResults {
  std::vector<recognition::MotifRelation> motif_results;
  std::vector<QAResult> qa_results;
};

/// @brief Motif and Q&A analysis of the learner's notes for one exercise.
///
/// Repeat and free-improvisation exercises compare each phrase with the one before;
/// sequence exercises look for a diatonic shift in the exercise scale first. Rhythm and
/// Q&A exercises pair phrase i with question i (cycling through the questions).
/// Single-note phrases are skipped. Press accuracy exercises produce nothing.
PerformanceResults evaluate_performance(const Exercise& exercise, std::span<const midi::MidiEvent> learner_events,
                                        std::span<const recognition::Motif> questions, const QAConfig& cfg = {});

}  // namespace improvise::curriculum
