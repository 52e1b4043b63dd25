#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace improvise {

/// @brief Failure categories surfaced by the engine's public operations.
enum class ErrorCode {
  InvalidArgument,
  InvalidProgression,
  NoChordScale,
  MalformedVlq,
  VlqRange,
  Truncated,
  NotSmf,
  UnsupportedTimeDivision,
  UnsupportedFormat,
  MalformedTrack,
  NotDiatonic,
  InvalidMotif,
  EmptyAnswer,
  NotFound,
  Protocol,
  Io,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace improvise
