#pragma once

#include <span>
#include <vector>

#include "improvise/curriculum/lesson.h"
#include "improvise/curriculum/scoring.h"
#include "improvise/gateway/content_library.h"
#include "improvise/gateway/engine.h"
#include "improvise/midi/smf.h"

namespace improvise::gateway {

struct ReplayOptions {
  int lesson_id = 1;
  int exercise = 0;
  double speed = 1.0;  ///< Tempo multiplier; the hit window shrinks by the same factor.
};

/// @brief Feeds a recorded performance through a lesson on a virtual clock.
///
/// The engine runs at the file's first tempo times `speed`, and every note event is
/// delivered at its own tick. Identical inputs give identical reports.
/// Throws Error(NotFound) for an unknown lesson or exercise, Error(InvalidArgument)
/// for a non-positive speed.
curriculum::SessionReport replay(const midi::MidiFile& performance, const EngineSettings& settings,
                                 std::vector<curriculum::LessonSpec> lessons, const ReplayOptions& options,
                                 const ContentLibrary* library = nullptr);

}  // namespace improvise::gateway
