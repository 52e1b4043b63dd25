#include "improvise/curriculum/lesson.h"

#include <algorithm>
#include <array>
#include <cstdio>

#include "improvise/error.h"

namespace improvise::curriculum {

namespace {

using modes::Mode;

constexpr std::array<std::pair<Evaluation, std::string_view>, 6> kEvaluationNames{{
    {Evaluation::PressAccuracy, "press_accuracy"},
    {Evaluation::MotifRepeat, "motif_repeat"},
    {Evaluation::MotifSequence, "motif_sequence"},
    {Evaluation::RhythmMatch, "rhythm_match"},
    {Evaluation::QaExchange, "qa_exchange"},
    {Evaluation::FreeImprov, "free_improv"},
}};

const clock::SwingProfile kSwing{2.0, clock::Subdivision::Eighth};

modes::ModeConfig mode_config(Mode mode, bool approaches = false,
                              modes::ApproachKind kind = modes::ApproachKind::HalfStep) {
  modes::ModeConfig cfg;
  cfg.mode = mode;
  cfg.approaches_on = approaches;
  cfg.approach_kind = kind;
  return cfg;
}

Exercise exercise(Mode mode, Evaluation evaluation, const theory::Key& key) {
  Exercise e;
  e.mode = mode_config(mode);
  e.key = key;
  e.evaluation = evaluation;
  return e;
}

}  // namespace

std::string_view evaluation_name(Evaluation e) {
  for (const auto& [value, name] : kEvaluationNames) {
    if (value == e) return name;
  }
  return "";
}

std::optional<Evaluation> parse_evaluation(std::string_view name) {
  for (const auto& [value, n] : kEvaluationNames) {
    if (n == name) return value;
  }
  return std::nullopt;
}

std::string LessonSpec::label() const {
  char number[8];
  std::snprintf(number, sizeof number, "%02d", id);
  return std::string(number) + " " + title;
}

const BindingMatrix& BindingMatrix::standard() {
  static const BindingMatrix matrix = [] {
    BindingMatrix m;
    for (auto mode : {Mode::GuidedPress, Mode::RollingImprov, Mode::OnwaitRoll, Mode::ExpertPress}) {
      m.allow(1, mode, Evaluation::PressAccuracy);
    }
    for (auto ev : {Evaluation::MotifRepeat, Evaluation::MotifSequence, Evaluation::PressAccuracy}) {
      m.allow(2, Mode::OnwaitRoll, ev);
    }
    for (auto ev : {Evaluation::RhythmMatch, Evaluation::MotifRepeat, Evaluation::QaExchange}) {
      m.allow(3, Mode::RollingImprov, ev);
    }
    for (auto ev : {Evaluation::PressAccuracy, Evaluation::MotifRepeat}) m.allow(4, Mode::GuidedPress, ev);
    for (auto ev : {Evaluation::QaExchange, Evaluation::MotifSequence, Evaluation::MotifRepeat}) {
      m.allow(5, Mode::ExpertPress, ev);
    }
    m.allow(6, Mode::ExpertPress, Evaluation::FreeImprov);
    return m;
  }();
  return matrix;
}

void BindingMatrix::allow(int lesson_id, modes::Mode mode, Evaluation evaluation) {
  allowed_.insert({lesson_id, mode, evaluation});
}

bool BindingMatrix::allows(int lesson_id, modes::Mode mode, Evaluation evaluation) const {
  return allowed_.count({lesson_id, mode, evaluation}) > 0;
}

void validate(const LessonSpec& lesson, const BindingMatrix& matrix) {
  const auto where = "lesson " + std::to_string(lesson.id) + ": ";
  if (lesson.id < 1 || lesson.id > 6) throw Error(ErrorCode::InvalidArgument, where + "id must be 1-6");
  if (lesson.title.empty()) throw Error(ErrorCode::InvalidArgument, where + "title is empty");
  if (lesson.exercises.empty()) throw Error(ErrorCode::InvalidArgument, where + "needs at least one exercise");
  for (const auto& e : lesson.exercises) {
    modes::validate(e.mode);
    clock::validate(e.swing);
    const bool needs_content = e.evaluation == Evaluation::QaExchange || e.evaluation == Evaluation::RhythmMatch;
    if (needs_content && !e.content_ref) {
      throw Error(ErrorCode::InvalidArgument,
                  where + std::string(evaluation_name(e.evaluation)) + " needs question content");
    }
    if (!matrix.allows(lesson.id, e.mode.mode, e.evaluation)) {
      throw Error(ErrorCode::InvalidArgument, where + std::string(modes::mode_name(e.mode.mode)) + " with " +
                                                  std::string(evaluation_name(e.evaluation)) + " is not allowed");
    }
  }
}

void validate(std::span<const LessonSpec> lessons, const BindingMatrix& matrix) {
  std::set<int> ids;
  for (const auto& l : lessons) {
    validate(l, matrix);
    if (!ids.insert(l.id).second) {
      throw Error(ErrorCode::InvalidArgument, "duplicate lesson id " + std::to_string(l.id));
    }
  }
}

std::vector<LessonSpec> builtin_lessons(theory::PitchClass tonic) {
  using theory::Tonality;
  const theory::Key major{tonic, Tonality::Major};
  const theory::Key minor{tonic, Tonality::Minor};
  std::vector<LessonSpec> lessons;

  {
    LessonSpec l{1, "Swing", "Learning modes and extensions", {"Show different modes", "play modes in swing"}, {}};
    for (auto mode : {Mode::RollingImprov, Mode::GuidedPress, Mode::OnwaitRoll, Mode::ExpertPress}) {
      auto e = exercise(mode, Evaluation::PressAccuracy, major);
      if (mode != Mode::ExpertPress) e.progression = theory::two_five_one();
      e.swing = kSwing;
      l.exercises.push_back(e);
    }
    lessons.push_back(std::move(l));
  }
  {
    LessonSpec l{2,
                 "Motifs",
                 "Understand motifs",
                 {"Repeat motifs", "sequence the motifs", "learn how to form new motifs in Dorian scale"},
                 {}};
    const theory::Scale dorian{tonic, theory::Mode::Dorian};
    for (auto ev : {Evaluation::MotifRepeat, Evaluation::MotifSequence, Evaluation::PressAccuracy}) {
      auto e = exercise(Mode::OnwaitRoll, ev, minor);
      e.progression = theory::tonic_minor_vamp();
      e.scale = dorian;
      if (ev == Evaluation::PressAccuracy) e.mode = mode_config(Mode::OnwaitRoll, true, modes::ApproachKind::ScaleAbove);
      l.exercises.push_back(e);
    }
    lessons.push_back(std::move(l));
  }
  {
    LessonSpec l{3,
                 "Rhythmic patterns",
                 "Be familiar with different rhythmic patterns",
                 {"Practice with an audio accompaniement", "repeat and invent motifs", "questions and answers"},
                 {}};
    for (auto ev : {Evaluation::RhythmMatch, Evaluation::MotifRepeat, Evaluation::QaExchange}) {
      auto e = exercise(Mode::RollingImprov, ev, major);
      e.progression = theory::two_five_one();
      e.swing = kSwing;
      e.content_ref = ev == Evaluation::QaExchange ? kQuestionContentId : kRhythmContentId;
      l.exercises.push_back(e);
    }
    lessons.push_back(std::move(l));
  }
  {
    LessonSpec l{4,
                 "Relationship between the melody and harmony",
                 "Learn phrases",
                 {"Apply and learn a chosen chord progression", "learn chord tones", "repeat phrases over the chords"},
                 {}};
    auto a = exercise(Mode::GuidedPress, Evaluation::PressAccuracy, major);
    a.progression = theory::two_five_one();
    auto b = a;
    b.progression = theory::two_five_one_six();
    b.mode.approaches_on = true;
    auto c = exercise(Mode::GuidedPress, Evaluation::MotifRepeat, major);
    c.progression = theory::two_five_one();
    l.exercises = {a, b, c};
    lessons.push_back(std::move(l));
  }
  {
    LessonSpec l{5,
                 "Composition (Sequence, Q&A, Variation)",
                 "Learn basic composition techniques",
                 {"Repeat questions and repeat answers", "ask question and give your own answer",
                  "apply modes and be familiar with the vocabulary"},
                 {}};
    auto qa = exercise(Mode::ExpertPress, Evaluation::QaExchange, major);
    qa.content_ref = kQuestionContentId;
    auto seq = exercise(Mode::ExpertPress, Evaluation::MotifSequence, major);
    seq.scale = theory::key_scale(major);
    auto var = exercise(Mode::ExpertPress, Evaluation::MotifRepeat, major);
    var.mode.approaches_on = true;
    l.exercises = {qa, seq, var};
    lessons.push_back(std::move(l));
  }
  {
    LessonSpec l{6,
                 "Improvise (Compose in the moment)",
                 "Apply different styles",
                 {"Apply rhythmic patterns", "use tools and all above lessons"},
                 {}};
    auto e = exercise(Mode::ExpertPress, Evaluation::FreeImprov, major);
    e.mode = mode_config(Mode::ExpertPress, true, modes::ApproachKind::Both);
    e.scale = theory::key_scale(major);
    e.swing = kSwing;
    l.exercises = {e};
    lessons.push_back(std::move(l));
  }
  return lessons;
}

std::optional<Exercise> next_exercise(const LessonSpec& lesson, int progress) {
  if (progress < 0) throw Error(ErrorCode::InvalidArgument, "progress must be non-negative");
  if (static_cast<std::size_t>(progress) >= lesson.exercises.size()) return std::nullopt;
  return lesson.exercises[static_cast<std::size_t>(progress)];
}

std::optional<Exercise> next_exercise(std::span<const LessonSpec> lessons, int lesson_id, int progress) {
  return next_exercise(find_lesson(lessons, lesson_id), progress);
}

const LessonSpec& find_lesson(std::span<const LessonSpec> lessons, int lesson_id) {
  const auto it = std::find_if(lessons.begin(), lessons.end(), [&](const LessonSpec& l) { return l.id == lesson_id; });
  if (it == lessons.end()) throw Error(ErrorCode::NotFound, "no lesson with id " + std::to_string(lesson_id));
  return *it;
}

}  // namespace improvise::curriculum
