#include "improvise/error.h"

namespace improvise {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument:
      return "InvalidArgument";
    case ErrorCode::InvalidProgression:
      return "InvalidProgression";
    case ErrorCode::NoChordScale:
      return "NoChordScale";
    case ErrorCode::MalformedVlq:
      return "MalformedVlq";
    case ErrorCode::VlqRange:
      return "VlqRange";
    case ErrorCode::Truncated:
      return "Truncated";
    case ErrorCode::NotSmf:
      return "NotSmf";
    case ErrorCode::UnsupportedTimeDivision:
      return "UnsupportedTimeDivision";
    case ErrorCode::UnsupportedFormat:
      return "UnsupportedFormat";
    case ErrorCode::MalformedTrack:
      return "MalformedTrack";
    case ErrorCode::NotDiatonic:
      return "NotDiatonic";
    case ErrorCode::InvalidMotif:
      return "InvalidMotif";
    case ErrorCode::EmptyAnswer:
      return "EmptyAnswer";
    case ErrorCode::NotFound:
      return "NotFound";
    case ErrorCode::Protocol:
      return "Protocol";
    case ErrorCode::Io:
      return "Io";
  }
  return "Unknown";
}

}  // namespace improvise
