#include "officelab/io.hpp"

#include <istream>
#include <ostream>
#include <sstream>

#include <fmt/format.h>
#include <fmt/ostream.h>
#include <fmt/ranges.h>

#include "json.hpp"

namespace officelab::io {

using nlohmann::json;

std::string format_double(double value) { return fmt::format("{}", value); }

void write_trajectories_jsonl(std::ostream& out,
                              std::span<const TrajectoryRecord> records) {
  for (const auto& r : records)
    fmt::print(out, "{{\"agent\":{},\"day\":{},\"tick\":{},\"location\":{}}}\n",
               r.agent, r.day, r.tick, r.location);
}

std::vector<TrajectoryRecord> read_trajectories_jsonl(std::istream& in) {
  std::vector<TrajectoryRecord> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    try {
      const auto j = json::parse(line);
      out.push_back({j.at("agent").get<AgentId>(), j.at("day").get<int>(),
                     j.at("tick").get<int>(), j.at("location").get<LocationId>()});
    } catch (const json::exception& e) {
      throw Error(fmt::format("trajectory line {}: {}", lineno, e.what()));
    }
  }
  return out;
}

void write_trajectories_csv(std::ostream& out,
                            std::span<const TrajectoryRecord> records) {
  out << "agent,day,tick,location\n";
  for (const auto& r : records)
    fmt::print(out, "{},{},{},{}\n", r.agent, r.day, r.tick, r.location);
}

void write_events_jsonl(std::ostream& out,
                        std::span<const ObservationEvent> events) {
  for (const auto& e : events)
    fmt::print(out,
               "{{\"sensor\":{},\"day\":{},\"tick\":{},\"reported_agent\":{},"
               "\"location\":{}}}\n",
               e.sensor, e.day, e.tick, e.reported_agent, e.location);
}

std::vector<ObservationEvent> read_events_jsonl(std::istream& in) {
  std::vector<ObservationEvent> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    try {
      const auto j = json::parse(line);
      out.push_back({j.at("sensor").get<SensorId>(), j.at("day").get<int>(),
                     j.at("tick").get<int>(), j.at("reported_agent").get<AgentId>(),
                     j.at("location").get<LocationId>()});
    } catch (const json::exception& e) {
      throw Error(fmt::format("event line {}: {}", lineno, e.what()));
    }
  }
  return out;
}

void write_beliefs_csv(std::ostream& out, std::span<const BeliefMatrix> beliefs,
                       std::span<const AgentId> agents, double omit_below) {
  out << "day,tick,agent,location,probability\n";
  for (const auto& m : beliefs)
    for (std::size_t a = 0; a < m.probs.size(); ++a)
      for (std::size_t x = 0; x < m.probs[a].size(); ++x) {
        const double p = m.probs[a][x];
        if (p < omit_below) continue;
        fmt::print(out, "{},{},{},{},{:.10g}\n", m.day, m.tick, agents[a], x, p);
      }
}

void write_paths_csv(std::ostream& out, std::span<const DecodedPath> paths) {
  out << "agent,day,tick,location\n";
  for (const auto& p : paths)
    for (std::size_t t = 0; t < p.path.size(); ++t)
      fmt::print(out, "{},{},{},{}\n", p.agent, p.day, t, p.path[t]);
}

std::vector<DecodedPath> read_paths_csv(std::istream& in) {
  std::vector<DecodedPath> out;
  std::string line;
  std::getline(in, line);  // header
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream fields(line);
    std::string cell;
    long long v[4];
    for (auto& x : v) {
      if (!std::getline(fields, cell, ','))
        throw Error(fmt::format("paths line {}: expected 4 columns", lineno));
      try {
        x = std::stoll(cell);
      } catch (const std::exception&) {
        throw Error(fmt::format("paths line {}: bad number \"{}\"", lineno, cell));
      }
    }
    const auto agent = static_cast<AgentId>(v[0]);
    const auto day = static_cast<int>(v[1]);
    const auto tick = static_cast<std::size_t>(v[2]);
    if (out.empty() || out.back().agent != agent || out.back().day != day)
      out.push_back({agent, day, {}, 0.0});
    if (tick != out.back().path.size())
      throw Error(fmt::format("paths line {}: ticks out of order", lineno));
    out.back().path.push_back(static_cast<LocationId>(v[3]));
  }
  return out;
}

void write_path_scores_csv(std::ostream& out,
                           std::span<const DecodedPath> paths) {
  out << "agent,day,log_score\n";
  for (const auto& p : paths)
    fmt::print(out, "{},{},{}\n", p.agent, p.day, format_double(p.log_score));
}

void write_occupancy_csv(std::ostream& out, std::string_view source,
                         std::span<const AgentAnalytics> reports) {
  fmt::print(out, "# source: {}\n", source);
  out << "agent,scope,location,probability\n";
  for (const auto& r : reports) {
    for (std::size_t x = 0; x < r.baseline.probs.size(); ++x)
      fmt::print(out, "{},baseline,{},{}\n", r.agent, x,
                 format_double(r.baseline.probs[x]));
    for (const auto& d : r.daily)
      for (std::size_t x = 0; x < d.probs.size(); ++x)
        fmt::print(out, "{},day{},{},{}\n", r.agent, *d.day, x,
                   format_double(d.probs[x]));
  }
}

void write_surprise_csv(std::ostream& out, std::string_view source,
                        std::span<const AgentAnalytics> reports) {
  fmt::print(out, "# source: {}\n", source);
  out << "agent,day,bits\n";
  for (const auto& r : reports)
    for (const auto& s : r.surprise)
      fmt::print(out, "{},{},{}\n", s.agent, s.day, format_double(s.bits));
}

void write_patterns_csv(std::ostream& out, std::string_view source,
                        std::span<const PatternReport> reports) {
  fmt::print(out, "# source: {}\n", source);
  out << "agent,pattern,support\n";
  for (const auto& r : reports)
    for (const auto& p : r.patterns)
      fmt::print(out, "{},{},{}\n", r.agent, fmt::join(p.sequence, ">"), p.support);
}

void write_figure_csv(std::ostream& out, std::string_view source,
                      std::span<const AgentAnalytics> reports) {
  fmt::print(out, "# source: {}\n", source);
  out << "panel,agent,day,location,value\n";
  for (const auto& r : reports)
    for (std::size_t x = 0; x < r.baseline.probs.size(); ++x)
      fmt::print(out, "a,{},,{},{}\n", r.agent, x, format_double(r.baseline.probs[x]));
  for (const auto& r : reports)
    for (const auto& d : r.daily)
      for (std::size_t x = 0; x < d.probs.size(); ++x)
        fmt::print(out, "b,{},{},{},{}\n", r.agent, *d.day, x,
                   format_double(d.probs[x]));
  for (const auto& r : reports)
    for (const auto& s : r.surprise)
      fmt::print(out, "c,{},{},,{}\n", s.agent, s.day, format_double(s.bits));
}

void write_node_metrics_csv(std::ostream& out, const GraphMetrics& metrics) {
  out << "agent,department,in_degree,out_degree,weighted_in,weighted_out,"
         "weighted_total,hub_rank\n";
  for (const auto& n : metrics.nodes) {
    std::string rank;
    for (std::size_t i = 0; i < metrics.hubs.size(); ++i)
      if (metrics.hubs[i] == n.agent) rank = std::to_string(i + 1);
    fmt::print(out, "{},{},{},{},{},{},{},{}\n", n.agent, n.department,
               n.in_degree, n.out_degree, n.weighted_in, n.weighted_out,
               n.weighted_total(), rank);
  }
}

void write_department_matrix_csv(std::ostream& out,
                                 const GraphMetrics& metrics) {
  out << "from_department,to_department,weight\n";
  for (const auto& [key, w] : metrics.department_matrix)
    fmt::print(out, "{},{},{}\n", key.first, key.second, w);
}

namespace {

std::vector<AgentTrack> empty_tracks(const WorldConfig& config) {
  std::vector<AgentTrack> tracks;
  for (const auto& a : config.agents) {
    AgentTrack t;
    t.agent = a.id;
    t.home = a.home;
    t.department = a.department;
    t.days.assign(config.days, std::vector<LocationId>(config.ticks_per_day, -1));
    tracks.push_back(std::move(t));
  }
  return tracks;
}

void check_complete(const std::vector<AgentTrack>& tracks) {
  for (const auto& t : tracks)
    for (std::size_t d = 0; d < t.days.size(); ++d)
      for (LocationId x : t.days[d])
        if (x < 0)
          throw Error(fmt::format("agent {} day {} is missing ticks", t.agent, d));
}

void place(std::vector<AgentTrack>& tracks, const WorldConfig& config,
           AgentId agent, int day, int tick, LocationId loc) {
  if (day < 0 || day >= config.days || tick < 0 || tick >= config.ticks_per_day)
    throw Error(fmt::format("record day {} tick {} is outside the configured run",
                            day, tick));
  tracks[config.agent_index(agent)].days[day][tick] = loc;
}

}  // namespace

std::vector<AgentTrack> tracks_from_records(
    std::span<const TrajectoryRecord> records, const WorldConfig& config) {
  auto tracks = empty_tracks(config);
  for (const auto& r : records) place(tracks, config, r.agent, r.day, r.tick, r.location);
  check_complete(tracks);
  return tracks;
}

std::vector<AgentTrack> tracks_from_paths(std::span<const DecodedPath> paths,
                                          const WorldConfig& config) {
  auto tracks = empty_tracks(config);
  for (const auto& p : paths)
    for (std::size_t t = 0; t < p.path.size(); ++t)
      place(tracks, config, p.agent, p.day, static_cast<int>(t), p.path[t]);
  check_complete(tracks);
  return tracks;
}

}  // namespace officelab::io
