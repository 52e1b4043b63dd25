#include "improvise/gateway/config.h"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cstdlib>

#include "improvise/clock/swing.h"
#include "improvise/error.h"
#include "improvise/gateway/content_library.h"

namespace improvise::gateway {

namespace {

constexpr std::array<std::string_view, 7> kKeys{"port",        "content_dir",   "default_key",  "default_tempo_bpm",
                                                 "swing_ratio", "split_pitch", "hit_window_ms"};

template <typename T>
std::optional<T> parse_number(const std::string& text) {
  T value{};
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) return std::nullopt;
  return value;
}

std::string env_name(std::string_view key) {
  std::string name(kEnvPrefix);
  for (char c : key) name += static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return name;
}

}  // namespace

theory::Key Config::key() const {
  const auto k = theory::parse_key(default_key);
  if (!k) throw Error(ErrorCode::InvalidArgument, "cannot parse default_key '" + default_key + "'");
  return *k;
}

std::filesystem::path Config::reports_dir() const {
  return std::filesystem::path(content_dir).lexically_normal().parent_path() / "reports";
}

void validate(const Config& c) {
  if (c.port < 0 || c.port > 65535) throw Error(ErrorCode::InvalidArgument, "port must be 0-65535");
  if (c.content_dir.empty()) throw Error(ErrorCode::InvalidArgument, "content_dir is empty");
  (void)c.key();
  if (!(c.default_tempo_bpm >= 20.0 && c.default_tempo_bpm <= 400.0)) {
    throw Error(ErrorCode::InvalidArgument, "default_tempo_bpm must be within 20-400");
  }
  clock::validate(clock::SwingProfile{c.swing_ratio, clock::Subdivision::Eighth});
  if (c.split_pitch < modes::kLowestKey || c.split_pitch > modes::kHighestKey) {
    throw Error(ErrorCode::InvalidArgument, "split_pitch must be within 21-108");
  }
  if (!(c.hit_window_ms >= 0.0)) throw Error(ErrorCode::InvalidArgument, "hit_window_ms must be non-negative");
}

Json config_to_json(const Config& c) {
  return {{"port", c.port},
          {"content_dir", c.content_dir},
          {"default_key", c.default_key},
          {"default_tempo_bpm", c.default_tempo_bpm},
          {"swing_ratio", c.swing_ratio},
          {"split_pitch", c.split_pitch},
          {"hit_window_ms", c.hit_window_ms}};
}

Config config_from_json(const Json& j, Config c) {
  if (!j.is_object()) throw Error(ErrorCode::Protocol, "config must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (std::find(kKeys.begin(), kKeys.end(), key) == kKeys.end()) {
      throw Error(ErrorCode::Protocol, "unknown config key '" + key + "'");
    }
  }
  if (j.contains("port")) c.port = require_int(j, "port");
  if (j.contains("content_dir")) c.content_dir = require_string(j, "content_dir");
  if (j.contains("default_key")) c.default_key = require_string(j, "default_key");
  if (j.contains("default_tempo_bpm")) c.default_tempo_bpm = require_number(j, "default_tempo_bpm");
  if (j.contains("swing_ratio")) c.swing_ratio = require_number(j, "swing_ratio");
  if (j.contains("split_pitch")) c.split_pitch = require_int(j, "split_pitch");
  if (j.contains("hit_window_ms")) c.hit_window_ms = require_number(j, "hit_window_ms");
  return c;
}

Config load_config_file(const std::filesystem::path& path, Config base) {
  const auto bytes = read_file(path);
  Json j;
  try {
    j = Json::parse(bytes.begin(), bytes.end());
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::Protocol, "malformed config " + path.string() + ": " + e.what());
  }
  return config_from_json(j, std::move(base));
}

std::optional<std::string> process_env(const std::string& name) {
  if (const char* v = std::getenv(name.c_str())) return std::string(v);
  return std::nullopt;
}

Config apply_env(Config c, const EnvLookup& lookup) {
  auto number = [&](std::string_view key, auto& field) {
    const auto name = env_name(key);
    const auto text = lookup(name);
    if (!text) return;
    const auto v = parse_number<std::remove_reference_t<decltype(field)>>(*text);
    if (!v) throw Error(ErrorCode::InvalidArgument, name + " is not a number: '" + *text + "'");
    field = *v;
  };
  auto text = [&](std::string_view key, std::string& field) {
    if (const auto v = lookup(env_name(key))) field = *v;
  };
  number("port", c.port);
  text("content_dir", c.content_dir);
  text("default_key", c.default_key);
  number("default_tempo_bpm", c.default_tempo_bpm);
  number("swing_ratio", c.swing_ratio);
  number("split_pitch", c.split_pitch);
  number("hit_window_ms", c.hit_window_ms);
  return c;
}

}  // namespace improvise::gateway
