#include "commands.hpp"

#include <cstdlib>
#include <ctime>
#include <fstream>
#include <functional>
#include <map>

#include <fmt/chrono.h>
#include <fmt/format.h>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "CLI11.hpp"
#include "json.hpp"
#include "officelab/analytics.hpp"
#include "officelab/config.hpp"
#include "officelab/contacts.hpp"
#include "officelab/decoder.hpp"
#include "officelab/fusion.hpp"
#include "officelab/io.hpp"
#include "officelab/scenarios.hpp"
#include "officelab/sensors.hpp"
#include "officelab/simulator.hpp"

#ifndef OFFICELAB_VERSION
#define OFFICELAB_VERSION "0.0.0"
#endif

namespace officelab::cli {
namespace {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

constexpr const char* kManifestName = "manifest.json";

/// Input or precondition problem detected before a stage starts.
struct ValidationError : Error {
  using Error::Error;
};

std::string timestamp() {
  return fmt::format("{:%Y-%m-%dT%H:%M:%SZ}", fmt::gmtime(std::time(nullptr)));
}

std::string_view to_string(TrackSource s) {
  return s == TrackSource::truth ? "truth" : "decoded";
}

void write_file(const fs::path& path, const std::function<void(std::ostream&)>& body) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(fmt::format("cannot open {} for writing", path.string()));
  body(out);
  out.flush();
  if (!out) throw Error(fmt::format("failed writing {}", path.string()));
}

std::ifstream open_input(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(fmt::format("cannot read {}", path.string()));
  return in;
}

/// Manifest plus the loaded config for the run in one output directory.
struct Run {
  fs::path out;
  json manifest;
  WorldConfig config;

  void save() const {
    write_file(out / kManifestName,
               [&](std::ostream& o) { o << manifest.dump(2) << '\n'; });
  }

  /// Path of an output recorded by an earlier stage.
  fs::path input(const std::string& stage, const std::string& key) const {
    const auto& stages = manifest.at("stages");
    if (!stages.contains(stage) || !stages[stage]["outputs"].contains(key))
      throw Error(fmt::format("manifest lists no '{}' output from stage '{}'; run {} first",
                              key, stage, stage));
    const fs::path p = out / stages[stage]["outputs"][key].get<std::string>();
    if (!fs::exists(p))
      throw Error(fmt::format("{} is listed in the manifest but missing", p.string()));
    return p;
  }

  /// Records a finished stage and forgets every later one.
  void complete(const std::string& stage, json outputs, json extra = json::object()) {
    auto& stages = manifest["stages"];
    bool later = false;
    for (const auto& s : kStages) {
      if (later) stages.erase(s);
      if (s == stage) later = true;
    }
    json entry;
    entry["completed_at"] = timestamp();
    for (auto& [k, v] : extra.items()) entry[k] = v;
    entry["outputs"] = std::move(outputs);
    stages[stage] = std::move(entry);
    save();
  }
};

WorldConfig load_checked(const fs::path& path) {
  try {
    return load_config(path);
  } catch (const ConfigError& e) {
    throw ValidationError(e.what());
  }
}

Run start_run(const Options& options) {
  if (!options.config) throw ValidationError("--config is required");
  Run run;
  run.config = load_checked(*options.config);
  if (options.seed) run.config.rng_seed = *options.seed;
  run.out = options.out;
  // Only create the directory once the config is known to be good.
  fs::create_directories(run.out);
  run.manifest["tool"] = "officelab";
  run.manifest["version"] = OFFICELAB_VERSION;
  run.manifest["config_path"] = fs::absolute(*options.config).lexically_normal().string();
  run.manifest["seed"] = run.config.rng_seed;
  run.manifest["seed_overridden"] = options.seed.has_value();
  run.manifest["created_at"] = timestamp();
  run.manifest["stages"] = json::object();
  run.save();
  return run;
}

Run resume_run(const Options& options) {
  if (options.seed)
    throw ValidationError("--seed only applies to simulate and pipeline; later stages "
                          "reuse the seed recorded in the manifest");
  Run run;
  run.out = options.out;
  const auto manifest_path = run.out / kManifestName;
  if (!fs::exists(manifest_path))
    throw ValidationError(fmt::format("{} not found; run simulate first",
                                      manifest_path.string()));
  try {
    auto in = open_input(manifest_path);
    run.manifest = json::parse(in);
    const fs::path config_path =
        options.config ? *options.config
                       : fs::path(run.manifest.at("config_path").get<std::string>());
    run.config = load_checked(config_path);
    run.config.rng_seed = run.manifest.at("seed").get<std::uint64_t>();
    if (options.config)
      run.manifest["config_path"] = fs::absolute(*options.config).lexically_normal().string();
  } catch (const json::exception& e) {
    throw ValidationError(fmt::format("bad manifest {}: {}", manifest_path.string(), e.what()));
  }
  return run;
}

// --- stages -----------------------------------------------------------------

void stage_simulate(Run& run) {
  const auto records = run_simulation(run.config);
  spdlog::info("simulated {} agents over {} days x {} ticks", run.config.agents.size(),
               run.config.days, run.config.ticks_per_day);
  write_file(run.out / "trajectories.jsonl",
             [&](std::ostream& o) { io::write_trajectories_jsonl(o, records); });
  write_file(run.out / "trajectories.csv",
             [&](std::ostream& o) { io::write_trajectories_csv(o, records); });
  run.complete("simulate", {{"trajectories", "trajectories.jsonl"},
                            {"trajectories_csv", "trajectories.csv"}});
}

std::vector<TrajectoryRecord> read_trajectories(const Run& run) {
  auto in = open_input(run.input("simulate", "trajectories"));
  return io::read_trajectories_jsonl(in);
}

std::vector<ObservationEvent> read_events(const Run& run) {
  auto in = open_input(run.input("observe", "events"));
  return io::read_events_jsonl(in);
}

void stage_observe(Run& run) {
  const auto records = read_trajectories(run);
  const auto events = generate_event_log(records, run.config.sensors, run.config.rng_seed);
  spdlog::info("{} sensors produced {} events", run.config.sensors.size(), events.size());
  write_file(run.out / "events.jsonl",
             [&](std::ostream& o) { io::write_events_jsonl(o, events); });
  run.complete("observe", {{"events", "events.jsonl"}});
}

void stage_fuse(Run& run) {
  const auto events = read_events(run);
  const auto motion = build_motion_model(run.config);
  const auto result = fuse_run(events, run.config, motion);
  if (result.degenerate_updates > 0)
    spdlog::warn("{} updates had contradictory evidence and kept the prediction",
                 result.degenerate_updates);
  const auto ids = run.config.agent_ids();
  const auto argmax = argmax_paths(result.beliefs, ids.size(), run.config.days,
                                   run.config.ticks_per_day);
  std::vector<DecodedPath> paths;
  for (std::size_t a = 0; a < ids.size(); ++a)
    for (int d = 0; d < run.config.days; ++d) paths.push_back({ids[a], d, argmax[a][d], 0.0});
  write_file(run.out / "beliefs.csv",
             [&](std::ostream& o) { io::write_beliefs_csv(o, result.beliefs, ids); });
  write_file(run.out / "argmax_paths.csv",
             [&](std::ostream& o) { io::write_paths_csv(o, paths); });
  run.complete("fuse", {{"beliefs", "beliefs.csv"}, {"argmax_paths", "argmax_paths.csv"}},
               {{"degenerate_updates", result.degenerate_updates}});
}

void stage_decode(Run& run) {
  const auto events = read_events(run);
  const auto paths = decode_run(events, run.config, build_motion_model(run.config));
  write_file(run.out / "decoded_paths.csv",
             [&](std::ostream& o) { io::write_paths_csv(o, paths); });
  write_file(run.out / "decoded_scores.csv",
             [&](std::ostream& o) { io::write_path_scores_csv(o, paths); });
  run.complete("decode", {{"decoded_paths", "decoded_paths.csv"},
                          {"decoded_scores", "decoded_scores.csv"}});
}

std::vector<AgentTrack> load_tracks(const Run& run, TrackSource source) {
  if (source == TrackSource::truth) return io::tracks_from_records(read_trajectories(run), run.config);
  auto in = open_input(run.input("decode", "decoded_paths"));
  return io::tracks_from_paths(io::read_paths_csv(in), run.config);
}

void stage_analyze(Run& run, TrackSource source) {
  const auto tracks = load_tracks(run, source);
  const auto& settings = run.config.analytics;
  std::vector<AgentAnalytics> reports;
  std::vector<PatternReport> patterns;
  for (const auto& t : tracks) {
    reports.push_back(analyze_agent(t.agent, t.days, run.config.floor_plan,
                                    settings.baseline_alpha, settings.day_alpha));
    patterns.push_back(mine_frequent_patterns(t.agent, t.days, settings.min_support,
                                              settings.min_len, settings.max_len));
  }
  const auto label = to_string(source);
  write_file(run.out / "occupancy.csv",
             [&](std::ostream& o) { io::write_occupancy_csv(o, label, reports); });
  write_file(run.out / "surprise.csv",
             [&](std::ostream& o) { io::write_surprise_csv(o, label, reports); });
  write_file(run.out / "patterns.csv",
             [&](std::ostream& o) { io::write_patterns_csv(o, label, patterns); });
  write_file(run.out / "figure1.csv",
             [&](std::ostream& o) { io::write_figure_csv(o, label, reports); });
  run.complete("analyze",
               {{"occupancy", "occupancy.csv"},
                {"surprise", "surprise.csv"},
                {"patterns", "patterns.csv"},
                {"figure1", "figure1.csv"}},
               {{"source", label}});
}

void stage_graph(Run& run, TrackSource source) {
  const auto tracks = load_tracks(run, source);
  const auto graph = extract_contacts(tracks, run.config.floor_plan, run.config.contacts);
  const auto metrics = graph_metrics(graph, run.config.top_k_hubs);
  spdlog::info("contact graph: {} nodes, {} directed edges", graph.nodes.size(),
               graph.edges.size());
  write_file(run.out / "contacts.dot",
             [&](std::ostream& o) { o << export_graph(graph, GraphFormat::dot); });
  write_file(run.out / "contacts_undirected.dot", [&](std::ostream& o) {
    o << export_graph(graph, GraphFormat::dot_undirected);
  });
  write_file(run.out / "contacts_edges.csv",
             [&](std::ostream& o) { o << export_graph(graph, GraphFormat::edge_csv); });
  write_file(run.out / "node_metrics.csv",
             [&](std::ostream& o) { io::write_node_metrics_csv(o, metrics); });
  write_file(run.out / "department_matrix.csv",
             [&](std::ostream& o) { io::write_department_matrix_csv(o, metrics); });
  run.complete("graph",
               {{"contacts_dot", "contacts.dot"},
                {"contacts_undirected_dot", "contacts_undirected.dot"},
                {"contacts_edges", "contacts_edges.csv"},
                {"node_metrics", "node_metrics.csv"},
                {"department_matrix", "department_matrix.csv"}},
               {{"source", to_string(source)}});
}

void run_stage(const std::string& stage, Run& run, TrackSource source) {
  spdlog::debug("stage {} starting", stage);
  if (stage == "simulate") stage_simulate(run);
  else if (stage == "observe") stage_observe(run);
  else if (stage == "fuse") stage_fuse(run);
  else if (stage == "decode") stage_decode(run);
  else if (stage == "analyze") stage_analyze(run, source);
  else if (stage == "graph") stage_graph(run, source);
  else throw ValidationError(fmt::format("unknown stage \"{}\"", stage));
  spdlog::info("stage {} done", stage);
}

void setup_logging() {
  static bool done = false;
  if (done) return;
  done = true;
  auto logger = spdlog::stderr_color_st("officelab");
  logger->set_pattern("[%l] %v");
  spdlog::set_default_logger(logger);
  const char* env = std::getenv("OFFICELAB_LOG");
  const std::string level = env ? env : "info";
  if (level == "error") spdlog::set_level(spdlog::level::err);
  else if (level == "debug") spdlog::set_level(spdlog::level::debug);
  else spdlog::set_level(spdlog::level::info);
  if (level != "error" && level != "info" && level != "debug")
    spdlog::warn("OFFICELAB_LOG={} is not one of error, info, debug; using info", level);
}

}  // namespace

int run_command(const std::string& command, const Options& options) {
  setup_logging();
  const bool fresh = command == "simulate" || command == "pipeline";
  Run run;
  try {
    run = fresh ? start_run(options) : resume_run(options);
  } catch (const std::exception& e) {
    spdlog::error("{}", e.what());
    return validation_failure;
  }

  const std::vector<std::string> stages =
      command == "pipeline" ? kStages : std::vector<std::string>{command};
  for (const auto& stage : stages) {
    try {
      run_stage(stage, run, options.source);
    } catch (const ValidationError& e) {
      spdlog::error("{}", e.what());
      return validation_failure;
    } catch (const std::exception& e) {
      spdlog::error("stage {} failed: {}", stage, e.what());
      return stage_failure;
    }
  }
  return ok;
}

int write_scenario(const std::string& name, std::uint64_t seed, const fs::path& path) {
  setup_logging();
  WorldConfig config;
  if (name == "office50") config = scenarios::office50(seed);
  else if (name == "demo") config = scenarios::demo(seed);
  else if (name == "unusual_week") config = scenarios::unusual_week(seed);
  else {
    spdlog::error("unknown scenario \"{}\"", name);
    return validation_failure;
  }
  try {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    save_config(config, path);
  } catch (const std::exception& e) {
    spdlog::error("{}", e.what());
    return stage_failure;
  }
  return ok;
}

int main(int argc, const char* const* argv) {
  CLI::App app{"officelab: simulate an office, observe it through noisy sensors, "
               "reconstruct paths and analyse behaviour"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(OFFICELAB_VERSION));

  Options options;
  std::string config_path;
  std::uint64_t seed = 0;
  std::string source = "decoded";

  std::map<std::string, CLI::Option*> seed_options;
  std::map<std::string, CLI::Option*> config_options;
  std::vector<std::pair<std::string, std::string>> commands{
      {"simulate", "Run the movement simulator and write trajectories"},
      {"observe", "Turn trajectories into a noisy sensor event log"},
      {"fuse", "Filter events into per-tick location beliefs"},
      {"decode", "Decode the most likely path per agent and day"},
      {"analyze", "Occupancy, surprise and frequent patterns"},
      {"graph", "Contact graph, metrics and DOT export"},
      {"pipeline", "Run every stage in order"}};
  for (const auto& [name, help] : commands) {
    auto* sub = app.add_subcommand(name, help);
    config_options[name] = sub->add_option("--config", config_path, "World config (JSON)");
    sub->add_option("--out", options.out, "Output directory")->required();
    seed_options[name] = sub->add_option("--seed", seed, "Override the config seed");
    sub->add_option("--analytics-source", source,
                    "Tracks used by analyze and graph")
        ->check(CLI::IsMember({"truth", "decoded"}));
  }

  std::string scenario_name;
  std::string scenario_out;
  std::uint64_t scenario_seed = 1;
  auto* scenario = app.add_subcommand("scenario", "Write a built-in scenario config");
  scenario->add_option("name", scenario_name, "office50, demo or unusual_week")->required();
  scenario->add_option("--out", scenario_out, "Destination JSON file")->required();
  scenario->add_option("--seed", scenario_seed, "Seed stored in the config");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? ok : validation_failure;
  }

  if (scenario->parsed()) return write_scenario(scenario_name, scenario_seed, scenario_out);

  for (const auto& [name, help] : commands) {
    auto* sub = app.get_subcommand(name);
    if (!sub->parsed()) continue;
    if (config_options[name]->count() > 0) options.config = config_path;
    if (seed_options[name]->count() > 0) options.seed = seed;
    options.source = source == "truth" ? TrackSource::truth : TrackSource::decoded;
    return run_command(name, options);
  }
  return validation_failure;
}

}  // namespace officelab::cli
