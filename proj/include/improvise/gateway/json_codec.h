#pragma once

#include <json.hpp>

#include "improvise/curriculum/lesson.h"
#include "improvise/curriculum/scoring.h"
#include "improvise/midi/event.h"
#include "improvise/modes/frame.h"
#include "improvise/modes/modes.h"

namespace improvise::gateway {

using Json = nlohmann::json;

// Readers throw Error(Protocol) naming the offending field.

Json chord_to_json(const theory::Chord& chord);
theory::Chord chord_from_json(const Json& j);

Json frame_to_json(const modes::HighlightFrame& frame);
modes::HighlightFrame frame_from_json(const Json& j);

Json mode_config_to_json(const modes::ModeConfig& cfg);
modes::ModeConfig mode_config_from_json(const Json& j);

Json progression_to_json(const theory::Progression& p);
theory::Progression progression_from_json(const Json& j);

Json exercise_to_json(const curriculum::Exercise& e);
curriculum::Exercise exercise_from_json(const Json& j);

Json lesson_to_json(const curriculum::LessonSpec& lesson);
curriculum::LessonSpec lesson_from_json(const Json& j);

/// Id, title, label, objective, tools and exercise count only.
Json lesson_summary_to_json(const curriculum::LessonSpec& lesson);

Json motif_to_json(const recognition::Motif& m);
recognition::Motif motif_from_json(const Json& j);

Json report_to_json(const curriculum::SessionReport& r);
curriculum::SessionReport report_from_json(const Json& j);

/// Channel events only: note_on, note_off, control_change, program_change.
Json midi_event_to_json(const midi::MidiEvent& e);
midi::MidiEvent midi_event_from_json(const Json& j);

/// Field access helpers used by the readers.
const Json& require_field(const Json& j, const char* key);
int require_int(const Json& j, const char* key);
double require_number(const Json& j, const char* key);
std::string require_string(const Json& j, const char* key);
bool require_bool(const Json& j, const char* key);
int require_int_in(const Json& j, const char* key, int lo, int hi);

}  // namespace improvise::gateway
