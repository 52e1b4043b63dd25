#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

namespace improvise::clock {

enum class Subdivision { Eighth, Sixteenth };

std::string_view subdivision_name(Subdivision s);
std::optional<Subdivision> parse_subdivision(std::string_view name);

/// @brief Long:short ratio of each subdivision pair. 1.0 is straight time, 2.0 triplet swing.
struct SwingProfile {
  double ratio = 2.0;
  Subdivision subdivision = Subdivision::Eighth;

  bool straight() const { return ratio == 1.0; }

  friend bool operator==(const SwingProfile&, const SwingProfile&) = default;
};

inline constexpr double kMinSwingRatio = 1.0;
inline constexpr double kMaxSwingRatio = 3.0;

/// Throws Error(InvalidArgument) for a ratio outside [1, 3].
void validate(const SwingProfile& profile);

/// Continuous swing map within one pair. The pair boundaries stay fixed and the
/// midpoint moves from length/2 to length * ratio / (ratio + 1), linear on each side.
double apply_swing_exact(const SwingProfile& profile, double straight_tick, int ppq);
double remove_swing_exact(const SwingProfile& profile, double swung_tick, int ppq);

/// apply_swing_exact rounded to the nearest tick. Beat positions are fixed points.
std::int64_t apply_swing(const SwingProfile& profile, std::int64_t straight_tick, int ppq);

/// Inverse of apply_swing to within one tick.
std::int64_t remove_swing(const SwingProfile& profile, std::int64_t swung_tick, int ppq);

}  // namespace improvise::clock
