#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "officelab/types.hpp"
#include "officelab/world.hpp"

namespace officelab {

/// Proximity rule for turning co-location into contacts.
struct ContactRule {
  /// Shortest co-location run (in ticks) that counts as an interaction.
  int min_consecutive_ticks = 10;
  /// Co-location at locations with these tags never counts.
  std::set<Tag> excluded_tags{Tag::printer};
  /// Ignore two agents sitting together in their shared home office.
  bool officemate_exclusion = true;

  friend bool operator==(const ContactRule&, const ContactRule&) = default;
};

/// One person's location sequences, one vector per day.
struct AgentTrack {
  AgentId agent = 0;
  LocationId home = 0;
  std::string department = "Other";
  std::vector<std::vector<LocationId>> days;
};

/// Directed contact network. Edge (from, to) reads "from visited to";
/// the weight is the number of qualifying co-located ticks.
struct ContactGraph {
  std::map<AgentId, std::string> nodes;  // agent -> department
  std::map<std::pair<AgentId, AgentId>, long long> edges;

  long long weight(AgentId from, AgentId to) const;
};

/// Builds the contact graph from per-agent tracks.
///
/// For every maximal run where two agents share a location for at least
/// `min_consecutive_ticks`: excluded tags are skipped, the shared home office
/// of both is skipped under officemate_exclusion, a run in b's home adds to
/// a→b, a run in a's home adds to b→a, anything else adds to both.
/// Throws InvalidArgument when day counts or day lengths disagree.
ContactGraph extract_contacts(std::span<const AgentTrack> tracks,
                              const FloorPlan& plan, const ContactRule& rule);

struct NodeMetrics {
  AgentId agent = 0;
  std::string department;
  int in_degree = 0;
  int out_degree = 0;
  long long weighted_in = 0;
  long long weighted_out = 0;
  long long weighted_total() const { return weighted_in + weighted_out; }
};

struct GraphMetrics {
  std::vector<NodeMetrics> nodes;  // ascending agent id
  /// histogram[d] = number of nodes whose in+out degree equals d.
  std::vector<int> degree_histogram;
  /// Top nodes by weighted total degree, ties by lower id.
  std::vector<AgentId> hubs;
  /// Summed edge weight from department (row) to department (column).
  std::map<std::pair<std::string, std::string>, long long> department_matrix;
};

GraphMetrics graph_metrics(const ContactGraph& graph, std::size_t top_k = 5);

/// Merges a→b and b→a into one undirected weight keyed by (low, high).
std::map<std::pair<AgentId, AgentId>, long long> collapse_undirected(
    const ContactGraph& graph);

enum class GraphFormat { dot, dot_undirected, edge_csv };

/// Throws InvalidArgument for names other than dot, dot_undirected, edge_csv.
GraphFormat parse_graph_format(std::string_view name);

/// DOT node shape for a department: Research square, Development diamond,
/// Workshops oval, anything else hexagon.
std::string_view department_shape(std::string_view department);

/// Serialises the graph. Output is byte-stable for a given graph.
std::string export_graph(const ContactGraph& graph, GraphFormat format);

}  // namespace officelab
