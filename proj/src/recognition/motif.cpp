#include "improvise/recognition/motif.h"

#include <algorithm>
#include <cstdlib>
#include <map>

#include "improvise/error.h"

namespace improvise::recognition {

namespace {

bool within(std::int64_t a, std::int64_t b, std::int64_t tolerance) { return std::llabs(a - b) <= tolerance; }

bool same_pitches(const Motif& a, const Motif& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a.notes()[i].pitch != b.notes()[i].pitch) return false;
  }
  return true;
}

// Onsets relative to each motif's first note, and durations, within tolerance.
bool same_timing(const Motif& a, const Motif& b, std::int64_t tolerance) {
  if (a.size() != b.size()) return false;
  const auto a0 = a.notes().front().onset_tick;
  const auto b0 = b.notes().front().onset_tick;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto& x = a.notes()[i];
    const auto& y = b.notes()[i];
    if (!within(x.onset_tick - a0, y.onset_tick - b0, tolerance)) return false;
    if (!within(x.duration_ticks, y.duration_ticks, tolerance)) return false;
  }
  return true;
}

std::vector<int> degrees(const Motif& m, const theory::Scale& scale) {
  std::vector<int> out;
  out.reserve(m.size());
  for (const auto& n : m.notes()) {
    const auto d = theory::absolute_degree(scale, n.pitch.number());
    if (!d) {
      throw Error(ErrorCode::NotDiatonic,
                  theory::pitch_name(n.pitch) + " is not in " + theory::scale_name(scale));
    }
    out.push_back(*d);
  }
  return out;
}

}  // namespace

Motif::Motif(std::vector<MotifNote> notes) : notes_(std::move(notes)) {
  if (notes_.size() < 2) throw Error(ErrorCode::InvalidMotif, "a motif needs at least two notes");
  for (std::size_t i = 1; i < notes_.size(); ++i) {
    if (notes_[i].onset_tick <= notes_[i - 1].onset_tick) {
      throw Error(ErrorCode::InvalidMotif, "motif onsets must be strictly increasing");
    }
  }
}

Motif Motif::shifted(std::int64_t ticks) const {
  auto copy = notes_;
  for (auto& n : copy) n.onset_tick += ticks;
  return Motif(std::move(copy));
}

std::string_view relation_name(RelationKind kind) {
  switch (kind) {
    case RelationKind::Repeat:
      return "repeat";
    case RelationKind::Sequence:
      return "sequence";
    case RelationKind::RhythmicVariation:
      return "rhythmic_variation";
    case RelationKind::MelodicVariation:
      return "melodic_variation";
    case RelationKind::Unrelated:
      return "unrelated";
  }
  return "unrelated";
}

bool is_repeat(const Motif& a, const Motif& b, std::int64_t tick_tolerance) {
  return same_pitches(a, b) && same_timing(a, b, tick_tolerance);
}

std::optional<int> is_sequence(const Motif& a, const Motif& b, const theory::Scale& scale,
                               std::int64_t tick_tolerance) {
  const auto da = degrees(a, scale);
  const auto db = degrees(b, scale);
  if (da.size() != db.size()) return std::nullopt;
  const int shift = db.front() - da.front();
  if (shift == 0) return std::nullopt;
  for (std::size_t i = 0; i < da.size(); ++i) {
    if (db[i] - da[i] != shift) return std::nullopt;
  }
  if (!same_timing(a, b, tick_tolerance)) return std::nullopt;
  return shift;
}

MotifRelation classify_variation(const Motif& a, const Motif& b, std::int64_t tick_tolerance) {
  const bool pitches = same_pitches(a, b);
  const bool timing = same_timing(a, b, tick_tolerance);
  if (pitches && timing) return {RelationKind::Repeat, 0};
  if (pitches) return {RelationKind::RhythmicVariation, 0};
  if (timing) return {RelationKind::MelodicVariation, 0};
  return {RelationKind::Unrelated, 0};
}

bool rhythmic_match(const Motif& a, const Motif& b, std::int64_t tick_tolerance) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 1; i < a.size(); ++i) {
    const auto ioi_a = a.notes()[i].onset_tick - a.notes()[i - 1].onset_tick;
    const auto ioi_b = b.notes()[i].onset_tick - b.notes()[i - 1].onset_tick;
    if (!within(ioi_a, ioi_b, tick_tolerance)) return false;
  }
  return true;
}

std::vector<std::vector<MotifNote>> segment_phrases(std::span<const midi::MidiEvent> events,
                                                    const SegmentationRule& rule) {
  std::vector<MotifNote> notes;
  std::map<int, std::size_t> open;  // pitch -> index into notes
  std::int64_t last_tick = 0;

  auto close = [&](int pitch, std::int64_t tick) {
    auto it = open.find(pitch);
    if (it == open.end()) return;
    auto& n = notes[it->second];
    n.duration_ticks = std::max<std::int64_t>(1, tick - n.onset_tick);
    open.erase(it);
  };

  for (const auto& e : events) {
    last_tick = std::max(last_tick, e.tick);
    if (!e.is_note() || e.pitch() < rule.min_pitch) continue;
    close(e.pitch(), e.tick);
    if (e.kind == midi::EventKind::NoteOn) {
      open[e.pitch()] = notes.size();
      notes.push_back({theory::Pitch(e.pitch()), e.tick, 0});
    }
  }
  for (auto it = open.begin(); it != open.end();) {
    auto& n = notes[it->second];
    n.duration_ticks = std::max<std::int64_t>(1, last_tick - n.onset_tick);
    it = open.erase(it);
  }

  // Keep the top note of simultaneous onsets.
  std::stable_sort(notes.begin(), notes.end(),
                   [](const MotifNote& a, const MotifNote& b) { return a.onset_tick < b.onset_tick; });
  std::vector<MotifNote> line;
  for (const auto& n : notes) {
    if (!line.empty() && line.back().onset_tick == n.onset_tick) {
      if (n.pitch > line.back().pitch) line.back() = n;
    } else {
      line.push_back(n);
    }
  }

  std::vector<std::vector<MotifNote>> phrases;
  std::int64_t phrase_end = 0;
  for (const auto& n : line) {
    const bool rest = !phrases.empty() && n.onset_tick - phrase_end >= rule.min_rest_ticks;
    const bool full = !phrases.empty() && phrases.back().size() >= rule.max_notes;
    if (phrases.empty() || rest || full) {
      phrases.emplace_back();
      phrase_end = n.onset_tick;
    }
    phrases.back().push_back(n);
    phrase_end = std::max(phrase_end, n.onset_tick + n.duration_ticks);
  }
  return phrases;
}

std::vector<Motif> segment_motifs(std::span<const midi::MidiEvent> events, const SegmentationRule& rule) {
  std::vector<Motif> out;
  for (auto& phrase : segment_phrases(events, rule)) {
    if (phrase.size() >= 2) out.emplace_back(std::move(phrase));
  }
  return out;
}

}  // namespace improvise::recognition
