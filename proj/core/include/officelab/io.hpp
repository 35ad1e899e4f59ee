#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "officelab/analytics.hpp"
#include "officelab/config.hpp"
#include "officelab/contacts.hpp"
#include "officelab/decoder.hpp"
#include "officelab/fusion.hpp"
#include "officelab/sensors.hpp"
#include "officelab/simulator.hpp"

namespace officelab::io {

/// Shortest decimal form that round-trips (fixed for a given double).
std::string format_double(double value);

// Trajectories: {"agent":..,"day":..,"tick":..,"location":..} per line.
void write_trajectories_jsonl(std::ostream& out,
                              std::span<const TrajectoryRecord> records);
std::vector<TrajectoryRecord> read_trajectories_jsonl(std::istream& in);
// CSV with header agent,day,tick,location.
void write_trajectories_csv(std::ostream& out,
                            std::span<const TrajectoryRecord> records);

// Events: {"sensor":..,"day":..,"tick":..,"reported_agent":..,"location":..}.
void write_events_jsonl(std::ostream& out,
                        std::span<const ObservationEvent> events);
std::vector<ObservationEvent> read_events_jsonl(std::istream& in);

/// day,tick,agent,location,probability; entries below `omit_below` skipped.
void write_beliefs_csv(std::ostream& out, std::span<const BeliefMatrix> beliefs,
                       std::span<const AgentId> agents,
                       double omit_below = 1e-6);

/// agent,day,tick,location for each decoded (or argmax) path.
void write_paths_csv(std::ostream& out, std::span<const DecodedPath> paths);
/// Reads write_paths_csv output back; log_score is left at zero.
std::vector<DecodedPath> read_paths_csv(std::istream& in);
/// agent,day,log_score
void write_path_scores_csv(std::ostream& out,
                           std::span<const DecodedPath> paths);

/// Each report starts with a "# source: <source>" line.
void write_occupancy_csv(std::ostream& out, std::string_view source,
                         std::span<const AgentAnalytics> reports);
void write_surprise_csv(std::ostream& out, std::string_view source,
                        std::span<const AgentAnalytics> reports);
void write_patterns_csv(std::ostream& out, std::string_view source,
                        std::span<const PatternReport> reports);
/// Long format panel,agent,day,location,value: panel a is the pooled
/// occupancy, b the per-day occupancy, c the per-day surprise.
void write_figure_csv(std::ostream& out, std::string_view source,
                      std::span<const AgentAnalytics> reports);

void write_node_metrics_csv(std::ostream& out, const GraphMetrics& metrics);
void write_department_matrix_csv(std::ostream& out,
                                 const GraphMetrics& metrics);

/// Regroups records into per-agent day sequences (config agent order).
std::vector<AgentTrack> tracks_from_records(
    std::span<const TrajectoryRecord> records, const WorldConfig& config);
std::vector<AgentTrack> tracks_from_paths(std::span<const DecodedPath> paths,
                                          const WorldConfig& config);

}  // namespace officelab::io
