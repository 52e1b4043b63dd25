#include "improvise/clock/swing.h"

#include <cmath>
#include <string>

#include "improvise/error.h"

namespace improvise::clock {

namespace {

double pair_length(const SwingProfile& profile, int ppq) {
  if (ppq <= 0) throw Error(ErrorCode::InvalidArgument, "ppq must be positive");
  return profile.subdivision == Subdivision::Eighth ? ppq : ppq / 2.0;
}

// Maps x in [0, length) through the two linear pieces joining (0,0), (from_mid,to_mid), (length,length).
double piecewise(double x, double length, double from_mid, double to_mid) {
  if (x <= from_mid) return x * to_mid / from_mid;
  return to_mid + (x - from_mid) * (length - to_mid) / (length - from_mid);
}

double map_tick(const SwingProfile& profile, double tick, int ppq, bool forward) {
  validate(profile);
  const double length = pair_length(profile, ppq);
  const double straight_mid = length / 2.0;
  const double swung_mid = length * profile.ratio / (profile.ratio + 1.0);
  const double base = std::floor(tick / length) * length;
  const double x = tick - base;
  return base + (forward ? piecewise(x, length, straight_mid, swung_mid)
                         : piecewise(x, length, swung_mid, straight_mid));
}

}  // namespace

std::string_view subdivision_name(Subdivision s) { return s == Subdivision::Eighth ? "eighth" : "sixteenth"; }

std::optional<Subdivision> parse_subdivision(std::string_view name) {
  if (name == "eighth") return Subdivision::Eighth;
  if (name == "sixteenth") return Subdivision::Sixteenth;
  return std::nullopt;
}

void validate(const SwingProfile& profile) {
  if (!(profile.ratio >= kMinSwingRatio && profile.ratio <= kMaxSwingRatio)) {
    throw Error(ErrorCode::InvalidArgument, "swing ratio must be within [1, 3], got " + std::to_string(profile.ratio));
  }
}

double apply_swing_exact(const SwingProfile& profile, double straight_tick, int ppq) {
  return map_tick(profile, straight_tick, ppq, true);
}

double remove_swing_exact(const SwingProfile& profile, double swung_tick, int ppq) {
  return map_tick(profile, swung_tick, ppq, false);
}

std::int64_t apply_swing(const SwingProfile& profile, std::int64_t straight_tick, int ppq) {
  if (profile.straight()) return straight_tick;
  return std::llround(apply_swing_exact(profile, static_cast<double>(straight_tick), ppq));
}

std::int64_t remove_swing(const SwingProfile& profile, std::int64_t swung_tick, int ppq) {
  if (profile.straight()) return swung_tick;
  return std::llround(remove_swing_exact(profile, static_cast<double>(swung_tick), ppq));
}

}  // namespace improvise::clock
