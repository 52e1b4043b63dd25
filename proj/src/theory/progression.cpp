#include "improvise/theory/progression.h"

#include "improvise/error.h"

namespace improvise::theory {

Progression two_five_one(Beats step) {
  return {"ii-V-I",
          {{2, ChordQuality::Min7, step}, {5, ChordQuality::Dom7, step}, {1, ChordQuality::Maj7, step}}};
}

Progression two_five_one_six(Beats step) {
  return {"ii-V-I-VI",
          {{2, ChordQuality::Min7, step},
           {5, ChordQuality::Dom7, step},
           {1, ChordQuality::Maj7, step},
           {6, ChordQuality::Dom7, step}}};
}

Progression two_five_one_minor(Beats step) {
  return {"ii-V-i",
          {{2, ChordQuality::Min7b5, step}, {5, ChordQuality::Dom7, step}, {1, ChordQuality::Min7, step}}};
}

Progression tonic_minor_vamp(Beats step) { return {"i-vamp", {{1, ChordQuality::Min7, step}}}; }

std::optional<Progression> preset_progression(std::string_view name) {
  if (name == "ii-V-I") return two_five_one();
  if (name == "ii-V-I-VI") return two_five_one_six();
  if (name == "ii-V-i") return two_five_one_minor();
  if (name == "i-vamp") return tonic_minor_vamp();
  return std::nullopt;
}

PitchClass degree_root(const Key& key, int degree) {
  if (degree < 1 || degree > 7) {
    throw Error(ErrorCode::InvalidProgression, "scale degree out of range 1-7: " + std::to_string(degree));
  }
  return scale_pitch_classes(key_scale(key))[static_cast<std::size_t>(degree - 1)];
}

std::vector<TimedChord> realize_progression(const Progression& progression, const Key& key, int ppq) {
  if (ppq <= 0) throw Error(ErrorCode::InvalidArgument, "ppq must be positive");
  if (progression.steps.empty()) {
    throw Error(ErrorCode::InvalidProgression, "progression '" + progression.name + "' has no steps");
  }

  std::vector<TimedChord> out;
  out.reserve(progression.steps.size());
  std::int64_t tick = 0;
  for (const auto& step : progression.steps) {
    const auto& d = step.duration;
    if (d.num <= 0 || d.den <= 0) {
      throw Error(ErrorCode::InvalidProgression, "step duration must be positive");
    }
    const std::int64_t scaled = d.num * ppq;
    if (scaled % d.den != 0) {
      throw Error(ErrorCode::InvalidProgression, "step duration is not a whole number of ticks at this ppq");
    }
    const std::int64_t ticks = scaled / d.den;
    out.push_back({Chord{degree_root(key, step.degree), step.quality}, tick, ticks});
    tick += ticks;
  }
  return out;
}

std::int64_t realized_length(const std::vector<TimedChord>& realized) {
  return realized.empty() ? 0 : realized.back().end_tick();
}

}  // namespace improvise::theory
