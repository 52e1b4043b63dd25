#pragma once

#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <string_view>

#include "improvise/gateway/json_codec.h"
#include "improvise/modes/modes.h"
#include "improvise/theory/scale.h"

namespace improvise::gateway {

/// @brief Service settings. Every key can be overridden by IMPROVISE_<KEY> in upper case.
struct Config {
  int port = 8765;  ///< 0 picks a free port.
  std::string content_dir = "content";
  std::string default_key = "C major";
  double default_tempo_bpm = 120.0;
  double swing_ratio = 2.0;
  int split_pitch = 60;
  double hit_window_ms = 100.0;

  theory::Key key() const;
  /// `reports/` next to the content directory.
  std::filesystem::path reports_dir() const;

  friend bool operator==(const Config&, const Config&) = default;
};

inline constexpr std::string_view kEnvPrefix = "IMPROVISE_";

/// Throws Error(InvalidArgument) for out-of-range values or an unparseable key.
void validate(const Config& config);

Json config_to_json(const Config& config);

/// Missing keys keep their defaults. Throws Error(Protocol) for unknown keys or wrong types.
Config config_from_json(const Json& j, Config base = {});

/// Throws Error(Io) if unreadable, Error(Protocol) if malformed.
Config load_config_file(const std::filesystem::path& path, Config base = {});

using EnvLookup = std::function<std::optional<std::string>(const std::string& name)>;

/// Reads the process environment.
std::optional<std::string> process_env(const std::string& name);

/// Throws Error(InvalidArgument) naming the variable when a value does not parse.
Config apply_env(Config config, const EnvLookup& lookup = process_env);

}  // namespace improvise::gateway
