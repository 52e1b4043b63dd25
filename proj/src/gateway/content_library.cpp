#include "improvise/gateway/content_library.h"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <system_error>

#include "improvise/curriculum/performance.h"
#include "improvise/error.h"

namespace improvise::gateway {

namespace fs = std::filesystem;

namespace {

constexpr const char* kManifestName = "manifest.json";
constexpr const char* kLessonsName = "lessons.json";

[[noreturn]] void io_error(const std::string& what) { throw Error(ErrorCode::Io, what); }

std::string read_text(const fs::path& path) {
  const auto bytes = read_file(path);
  return std::string(bytes.begin(), bytes.end());
}

}  // namespace

Json manifest_entry_to_json(const ManifestEntry& e) {
  return {{"id", e.id},       {"path", e.path}, {"title", e.title}, {"lesson_tags", e.lesson_tags},
          {"ppq", e.ppq},     {"duration_ticks", e.duration_ticks}};
}

ManifestEntry manifest_entry_from_json(const Json& j) {
  ManifestEntry e;
  e.id = require_string(j, "id");
  e.path = require_string(j, "path");
  e.title = require_string(j, "title");
  for (const auto& t : require_field(j, "lesson_tags")) {
    if (!t.is_number_integer()) throw Error(ErrorCode::Protocol, "lesson tags must be integers");
    e.lesson_tags.push_back(t.get<int>());
  }
  e.ppq = require_int(j, "ppq");
  e.duration_ticks = require_field(j, "duration_ticks").get<std::int64_t>();
  return e;
}

ContentId content_id_for(std::span<const std::uint8_t> bytes) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (auto b : bytes) {
    hash ^= b;
    hash *= 0x100000001b3ULL;
  }
  char text[20];
  std::snprintf(text, sizeof text, "c%016llx", static_cast<unsigned long long>(hash));
  return text;
}

std::vector<std::uint8_t> read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) io_error("cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) io_error("cannot read " + path.string());
  return bytes;
}

void write_file_atomically(const fs::path& path, std::span<const std::uint8_t> bytes) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) io_error("cannot write " + tmp.string());
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    out.flush();
    if (!out) io_error("cannot write " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    io_error("cannot replace " + path.string());
  }
}

void write_file_atomically(const fs::path& path, const std::string& text) {
  write_file_atomically(path, std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

ContentLibrary::ContentLibrary(fs::path dir) : dir_(std::move(dir)) {
  std::error_code ec;
  fs::create_directories(dir_, ec);
  if (ec) io_error("cannot create content directory " + dir_.string() + ": " + ec.message());
  const auto manifest = dir_ / kManifestName;
  if (!fs::exists(manifest)) return;
  Json j;
  try {
    j = Json::parse(read_text(manifest));
  } catch (const Json::exception& e) {
    io_error("corrupt manifest " + manifest.string() + ": " + e.what());
  }
  for (const auto& e : require_field(j, "entries")) entries_.push_back(manifest_entry_from_json(e));
}

ContentId ContentLibrary::ingest(std::span<const std::uint8_t> smf_bytes, const std::string& title,
                                 const std::vector<int>& lesson_tags) {
  const auto parsed = midi::parse_smf(smf_bytes);
  const auto id = content_id_for(smf_bytes);
  if (!find(id)) add(id, smf_bytes, title, lesson_tags, parsed);
  return id;
}

void ContentLibrary::seed_builtins() {
  for (const auto& c : curriculum::builtin_content()) {
    if (find(c.id)) continue;
    const auto bytes = midi::serialize_smf(c.file);
    add(c.id, bytes, c.title, c.lesson_tags, c.file);
  }
}

void ContentLibrary::add(const ContentId& id, std::span<const std::uint8_t> bytes, const std::string& title,
                         const std::vector<int>& lesson_tags, const midi::MidiFile& parsed) {
  ManifestEntry entry{id, id + ".mid", title, lesson_tags, parsed.ppq, midi::duration_ticks(parsed)};
  write_file_atomically(dir_ / entry.path, bytes);
  entries_.push_back(entry);
  try {
    save_manifest();
  } catch (...) {
    entries_.pop_back();
    throw;
  }
}

void ContentLibrary::save_manifest() const {
  Json entries = Json::array();
  for (const auto& e : entries_) entries.push_back(manifest_entry_to_json(e));
  write_file_atomically(dir_ / kManifestName, Json{{"entries", entries}}.dump(2) + "\n");
}

std::optional<ManifestEntry> ContentLibrary::find(const ContentId& id) const {
  const auto it = std::find_if(entries_.begin(), entries_.end(), [&](const ManifestEntry& e) { return e.id == id; });
  if (it == entries_.end()) return std::nullopt;
  return *it;
}

fs::path ContentLibrary::path_of(const ContentId& id) const {
  const auto entry = find(id);
  if (!entry) throw Error(ErrorCode::NotFound, "no content with id " + id);
  return dir_ / entry->path;
}

midi::MidiFile ContentLibrary::load(const ContentId& id) const {
  const auto bytes = read_file(path_of(id));
  return midi::parse_smf(bytes);
}

std::vector<curriculum::LessonSpec> load_lessons(const fs::path& dir, theory::PitchClass tonic) {
  const auto path = dir / kLessonsName;
  if (!fs::exists(path)) return curriculum::builtin_lessons(tonic);
  Json j;
  try {
    j = Json::parse(read_text(path));
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::Protocol, "corrupt lessons file " + path.string() + ": " + e.what());
  }
  std::vector<curriculum::LessonSpec> lessons;
  for (const auto& l : require_field(j, "lessons")) lessons.push_back(lesson_from_json(l));
  auto matrix = curriculum::BindingMatrix::standard();
  if (j.contains("bindings")) {
    for (const auto& b : j.at("bindings")) {
      const auto mode = modes::parse_mode(require_string(b, "mode"));
      const auto evaluation = curriculum::parse_evaluation(require_string(b, "evaluation"));
      if (!mode || !evaluation) throw Error(ErrorCode::Protocol, "unknown mode or evaluation in bindings");
      matrix.allow(require_int(b, "lesson"), *mode, *evaluation);
    }
  }
  curriculum::validate(lessons, matrix);
  return lessons;
}

void save_lessons(const fs::path& dir, std::span<const curriculum::LessonSpec> lessons) {
  Json list = Json::array();
  for (const auto& l : lessons) list.push_back(lesson_to_json(l));
  write_file_atomically(dir / kLessonsName, Json{{"lessons", list}}.dump(2) + "\n");
}

}  // namespace improvise::gateway
