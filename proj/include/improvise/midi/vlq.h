#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace improvise::midi {

/// Largest value a four-byte variable-length quantity can hold.
inline constexpr std::uint32_t kMaxVlq = 0x0FFFFFFF;

struct VlqResult {
  std::uint32_t value = 0;
  std::size_t consumed = 0;
};

/// Decodes a variable-length quantity from the front of `bytes`.
/// Throws Error(Truncated) on empty or unterminated input and
/// Error(MalformedVlq) when more than four bytes would be needed.
VlqResult decode_vlq(std::span<const std::uint8_t> bytes);

/// Minimal-length encoding. Throws Error(VlqRange) above kMaxVlq.
std::vector<std::uint8_t> encode_vlq(std::uint32_t value);

/// Appends the encoding of `value` to `out`.
void append_vlq(std::vector<std::uint8_t>& out, std::uint32_t value);

}  // namespace improvise::midi
