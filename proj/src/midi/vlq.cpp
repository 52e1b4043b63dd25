#include "improvise/midi/vlq.h"

#include "improvise/error.h"

namespace improvise::midi {

VlqResult decode_vlq(std::span<const std::uint8_t> bytes) {
  if (bytes.empty()) throw Error(ErrorCode::Truncated, "empty variable-length quantity");
  std::uint32_t value = 0;
  for (std::size_t i = 0; i < bytes.size(); ++i) {
    if (i == 4) throw Error(ErrorCode::MalformedVlq, "variable-length quantity longer than 4 bytes");
    value = (value << 7) | (bytes[i] & 0x7Fu);
    if ((bytes[i] & 0x80u) == 0) return {value, i + 1};
  }
  if (bytes.size() >= 4) throw Error(ErrorCode::MalformedVlq, "variable-length quantity longer than 4 bytes");
  throw Error(ErrorCode::Truncated, "unterminated variable-length quantity");
}

void append_vlq(std::vector<std::uint8_t>& out, std::uint32_t value) {
  if (value > kMaxVlq) {
    throw Error(ErrorCode::VlqRange, "value does not fit a 4-byte variable-length quantity");
  }
  std::uint8_t groups[4];
  int n = 0;
  do {
    groups[n++] = static_cast<std::uint8_t>(value & 0x7F);
    value >>= 7;
  } while (value != 0);
  for (int i = n - 1; i >= 0; --i) {
    out.push_back(static_cast<std::uint8_t>(groups[i] | (i > 0 ? 0x80 : 0x00)));
  }
}

std::vector<std::uint8_t> encode_vlq(std::uint32_t value) {
  std::vector<std::uint8_t> out;
  append_vlq(out, value);
  return out;
}

}  // namespace improvise::midi
