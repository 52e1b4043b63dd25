#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "improvise/curriculum/lesson.h"
#include "improvise/gateway/json_codec.h"
#include "improvise/midi/smf.h"

namespace improvise::gateway {

using curriculum::ContentId;

struct ManifestEntry {
  ContentId id;
  std::string path;  ///< Relative to the content directory.
  std::string title;
  std::vector<int> lesson_tags;
  int ppq = 480;
  std::int64_t duration_ticks = 0;

  friend bool operator==(const ManifestEntry&, const ManifestEntry&) = default;
};

Json manifest_entry_to_json(const ManifestEntry& e);
ManifestEntry manifest_entry_from_json(const Json& j);

/// "c" followed by the 64-bit FNV-1a hash of the bytes in hex.
ContentId content_id_for(std::span<const std::uint8_t> bytes);

/// @brief Expert MIDI files stored as `<dir>/<id>.mid` and indexed by `<dir>/manifest.json`.
///
/// Not thread-safe; the engine loop and the CLI each own their instance.
class ContentLibrary {
 public:
  /// Creates the directory if needed and loads the manifest when present.
  /// Throws Error(Io) for an unreadable manifest.
  explicit ContentLibrary(std::filesystem::path dir);

  const std::filesystem::path& dir() const { return dir_; }
  const std::vector<ManifestEntry>& entries() const { return entries_; }

  /// Stores a parseable SMF and returns its id. Ingesting identical bytes again returns
  /// the existing id. Parse errors propagate and leave the library unchanged.
  ContentId ingest(std::span<const std::uint8_t> smf_bytes, const std::string& title,
                   const std::vector<int>& lesson_tags = {});

  /// Adds the built-in content under its fixed ids when missing.
  void seed_builtins();

  std::optional<ManifestEntry> find(const ContentId& id) const;

  /// Throws Error(NotFound) for an unknown id.
  midi::MidiFile load(const ContentId& id) const;

  /// Throws Error(NotFound) for an unknown id.
  std::filesystem::path path_of(const ContentId& id) const;

 private:
  void add(const ContentId& id, std::span<const std::uint8_t> bytes, const std::string& title,
           const std::vector<int>& lesson_tags, const midi::MidiFile& parsed);
  void save_manifest() const;

  std::filesystem::path dir_;
  std::vector<ManifestEntry> entries_;
};

/// Writes through a temporary file and a rename. Throws Error(Io) on failure.
void write_file_atomically(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);
void write_file_atomically(const std::filesystem::path& path, const std::string& text);

/// Throws Error(Io) when the file cannot be read.
std::vector<std::uint8_t> read_file(const std::filesystem::path& path);

/// Lessons from `<dir>/lessons.json` when present, otherwise the built-in set in `tonic`.
/// The file may widen the binding matrix with a "bindings" list of {lesson, mode, evaluation}.
/// Throws Error(Protocol) or Error(InvalidArgument) for an invalid file.
std::vector<curriculum::LessonSpec> load_lessons(const std::filesystem::path& dir, theory::PitchClass tonic);

void save_lessons(const std::filesystem::path& dir, std::span<const curriculum::LessonSpec> lessons);

}  // namespace improvise::gateway
