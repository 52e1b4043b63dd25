#include <CLI11.hpp>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "improvise/curriculum/performance.h"
#include "improvise/error.h"
#include "improvise/gateway/config.h"
#include "improvise/gateway/content_library.h"
#include "improvise/gateway/engine.h"
#include "improvise/gateway/engine_loop.h"
#include "improvise/gateway/replay.h"
#include "improvise/gateway/server.h"
#include "improvise/midi/smf.h"

namespace fs = std::filesystem;
using namespace improvise;
using namespace improvise::gateway;

namespace {

Config resolve_config(const std::string& config_path) {
  Config cfg;
  if (!config_path.empty()) cfg = load_config_file(config_path);
  cfg = apply_env(cfg);
  validate(cfg);
  return cfg;
}

/// A library id first, then a file path.
midi::MidiFile resolve_content(const std::string& ref, const Config& cfg) {
  if (fs::is_directory(cfg.content_dir)) {
    ContentLibrary lib(cfg.content_dir);
    if (lib.find(ref)) return lib.load(ref);
  }
  if (fs::is_regular_file(ref)) return midi::parse_smf(read_file(ref));
  for (const auto& c : curriculum::builtin_content()) {
    if (c.id == ref) return c.file;
  }
  throw Error(ErrorCode::NotFound, "no content or file named " + ref);
}

int serve(const Config& cfg, const std::string& bind) {
  ContentLibrary lib(cfg.content_dir);
  lib.seed_builtins();
  auto lessons = load_lessons(cfg.content_dir, cfg.key().tonic);
  EngineLoop loop(Engine(EngineSettings::from_config(cfg), std::move(lessons), &lib), {60.0, cfg.reports_dir()});
  Server server(loop, static_cast<std::uint16_t>(cfg.port), bind);
  loop.start();
  std::cout << "improvise: listening on " << bind << ":" << server.port() << " (ws /ws, health /health)" << std::endl;
  server.run();
  loop.stop();
  return 0;
}

int ingest(const Config& cfg, const std::string& file, const std::string& title, const std::vector<int>& tags) {
  ContentLibrary lib(cfg.content_dir);
  const auto bytes = read_file(file);
  const auto id = lib.ingest(bytes, title.empty() ? fs::path(file).stem().string() : title, tags);
  std::cout << id << "\n";
  return 0;
}

int list_lessons(const Config& cfg) {
  for (const auto& l : load_lessons(cfg.content_dir, cfg.key().tonic)) std::cout << l.label() << "\n";
  return 0;
}

int run_replay(const Config& cfg, const std::string& ref, int lesson, int exercise, double speed) {
  const auto file = resolve_content(ref, cfg);
  std::optional<ContentLibrary> lib;
  if (fs::is_directory(cfg.content_dir)) lib.emplace(cfg.content_dir);
  const auto report = replay(file, EngineSettings::from_config(cfg), load_lessons(cfg.content_dir, cfg.key().tonic),
                             {lesson, exercise, speed}, lib ? &*lib : nullptr);
  std::cout << report_to_json(report).dump(2) << "\n";
  return 0;
}

int dump(const Config& cfg, const std::string& ref) {
  const auto file = resolve_content(ref, cfg);
  std::cout << "format " << file.format << ", ppq " << file.ppq << ", " << file.tracks.size() << " track"
            << (file.tracks.size() == 1 ? "" : "s") << "\n";
  for (std::size_t i = 0; i < file.tracks.size(); ++i) {
    std::cout << "track " << i << "\n";
    for (const auto& e : file.tracks[i].events) std::cout << "  " << midi::describe(e) << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Real-time piano improvisation training engine"};
  app.name("improvise");
  std::string config_path;
  app.add_option("--config", config_path, "JSON config file")->check(CLI::ExistingFile);
  app.require_subcommand(1);

  auto* serve_cmd = app.add_subcommand("serve", "Run the WebSocket service");
  int port = -1;
  std::string bind = "0.0.0.0";
  serve_cmd->add_option("--port", port, "Port (overrides config)")->check(CLI::Range(0, 65535));
  serve_cmd->add_option("--bind", bind, "Listen address");

  auto* ingest_cmd = app.add_subcommand("ingest", "Add a MIDI file to the content library");
  std::string ingest_file, title;
  std::vector<int> tags;
  ingest_cmd->add_option("file", ingest_file, "Standard MIDI file")->required();
  ingest_cmd->add_option("--title", title, "Title (defaults to the file name)");
  ingest_cmd->add_option("--lesson", tags, "Lesson tag, repeatable")->check(CLI::Range(1, 6));

  auto* lessons_cmd = app.add_subcommand("lessons", "List the lessons");

  auto* replay_cmd = app.add_subcommand("replay", "Score a recorded performance against a lesson");
  std::string replay_ref;
  int lesson = 1;
  int exercise = 0;
  double speed = 1.0;
  replay_cmd->add_option("content", replay_ref, "Content id or MIDI file")->required();
  replay_cmd->add_option("lesson", lesson, "Lesson id")->required()->check(CLI::Range(1, 6));
  replay_cmd->add_option("--exercise", exercise, "Exercise index")->check(CLI::NonNegativeNumber);
  replay_cmd->add_option("--speed", speed, "Tempo multiplier")->check(CLI::PositiveNumber);

  auto* dump_cmd = app.add_subcommand("dump", "List the events of a MIDI file");
  std::string dump_ref;
  dump_cmd->add_option("content", dump_ref, "Content id or MIDI file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "improvise: " << e.what() << "\n" << app.help();
    return 2;
  }

  try {
    auto cfg = resolve_config(config_path);
    if (*serve_cmd) {
      if (port >= 0) cfg.port = port;
      return serve(cfg, bind);
    }
    if (*ingest_cmd) return ingest(cfg, ingest_file, title, tags);
    if (*lessons_cmd) return list_lessons(cfg);
    if (*replay_cmd) return run_replay(cfg, replay_ref, lesson, exercise, speed);
    if (*dump_cmd) return dump(cfg, dump_ref);
  } catch (const std::exception& e) {
    std::cerr << "improvise: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
