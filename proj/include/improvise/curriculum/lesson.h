#pragma once

#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include "improvise/clock/swing.h"
#include "improvise/modes/modes.h"
#include "improvise/theory/progression.h"
#include "improvise/theory/scale.h"

namespace improvise::curriculum {

enum class Evaluation { PressAccuracy, MotifRepeat, MotifSequence, RhythmMatch, QaExchange, FreeImprov };

std::string_view evaluation_name(Evaluation e);
std::optional<Evaluation> parse_evaluation(std::string_view name);

/// Identifier of a MIDI file in the content library.
using ContentId = std::string;

struct Exercise {
  modes::ModeConfig mode;
  std::optional<theory::Progression> progression;
  theory::Key key;
  std::optional<theory::Scale> scale;
  std::optional<ContentId> content_ref;
  clock::SwingProfile swing{1.0, clock::Subdivision::Eighth};
  Evaluation evaluation = Evaluation::PressAccuracy;

  friend bool operator==(const Exercise&, const Exercise&) = default;
};

struct LessonSpec {
  int id = 1;
  std::string title;
  std::string objective;
  std::vector<std::string> tools;
  std::vector<Exercise> exercises;

  /// "01 Swing"
  std::string label() const;

  friend bool operator==(const LessonSpec&, const LessonSpec&) = default;
};

inline const ContentId kQuestionContentId = "builtin-questions";
inline const ContentId kRhythmContentId = "builtin-rhythm";

/// @brief Which (mode, evaluation) pairs each lesson may use.
class BindingMatrix {
 public:
  /// The default bindings of the six built-in lessons.
  static const BindingMatrix& standard();

  BindingMatrix() = default;
  void allow(int lesson_id, modes::Mode mode, Evaluation evaluation);
  bool allows(int lesson_id, modes::Mode mode, Evaluation evaluation) const;

 private:
  std::set<std::tuple<int, modes::Mode, Evaluation>> allowed_;
};

/// Throws Error(InvalidArgument) for an id outside 1-6, an empty title or exercise list,
/// a qa_exchange or rhythm_match exercise without content, or a binding the matrix forbids.
void validate(const LessonSpec& lesson, const BindingMatrix& matrix = BindingMatrix::standard());

/// Throws Error(InvalidArgument) for duplicate ids or any invalid lesson.
void validate(std::span<const LessonSpec> lessons, const BindingMatrix& matrix = BindingMatrix::standard());

/// The six lessons of the co-design table, with exercises set in `tonic`.
std::vector<LessonSpec> builtin_lessons(theory::PitchClass tonic = theory::PitchClass(0));

/// Exercise number `progress`, or none once the lesson is complete.
/// Throws Error(InvalidArgument) for negative progress.
std::optional<Exercise> next_exercise(const LessonSpec& lesson, int progress);

/// Looks the lesson up by id first. Throws Error(NotFound) for an unknown id.
std::optional<Exercise> next_exercise(std::span<const LessonSpec> lessons, int lesson_id, int progress);

/// Throws Error(NotFound) for an unknown id.
const LessonSpec& find_lesson(std::span<const LessonSpec> lessons, int lesson_id);

}  // namespace improvise::curriculum
