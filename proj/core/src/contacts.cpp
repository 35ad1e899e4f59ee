#include "officelab/contacts.hpp"

#include <algorithm>
#include <cctype>

#include <fmt/format.h>

namespace officelab {

long long ContactGraph::weight(AgentId from, AgentId to) const {
  auto it = edges.find({from, to});
  return it == edges.end() ? 0 : it->second;
}

ContactGraph extract_contacts(std::span<const AgentTrack> tracks,
                              const FloorPlan& plan, const ContactRule& rule) {
  if (rule.min_consecutive_ticks < 1)
    throw InvalidArgument("min_consecutive_ticks must be >= 1");
  ContactGraph graph;
  for (const auto& t : tracks) graph.nodes[t.agent] = t.department;
  if (tracks.empty()) return graph;

  const std::size_t days = tracks.front().days.size();
  for (const auto& t : tracks) {
    if (t.days.size() != days)
      throw InvalidArgument(fmt::format("agent {} has {} days, expected {}",
                                        t.agent, t.days.size(), days));
    for (std::size_t d = 0; d < days; ++d)
      if (t.days[d].size() != tracks.front().days[d].size())
        throw InvalidArgument(fmt::format(
            "agent {} day {} has {} ticks, expected {}", t.agent, d,
            t.days[d].size(), tracks.front().days[d].size()));
  }

  auto credit = [&](const AgentTrack& a, const AgentTrack& b, LocationId x,
                    long long ticks) {
    if (rule.excluded_tags.count(plan.tag(x))) return;
    const bool home_a = a.home == x;
    const bool home_b = b.home == x;
    if (home_a && home_b && rule.officemate_exclusion) return;
    if (home_b && !home_a) {
      graph.edges[{a.agent, b.agent}] += ticks;
    } else if (home_a && !home_b) {
      graph.edges[{b.agent, a.agent}] += ticks;
    } else {
      graph.edges[{a.agent, b.agent}] += ticks;
      graph.edges[{b.agent, a.agent}] += ticks;
    }
  };

  for (std::size_t i = 0; i < tracks.size(); ++i) {
    for (std::size_t j = i + 1; j < tracks.size(); ++j) {
      const auto& a = tracks[i];
      const auto& b = tracks[j];
      for (std::size_t d = 0; d < days; ++d) {
        const auto& pa = a.days[d];
        const auto& pb = b.days[d];
        std::size_t t = 0;
        while (t < pa.size()) {
          if (pa[t] != pb[t]) {
            ++t;
            continue;
          }
          const LocationId x = pa[t];
          std::size_t end = t;
          while (end < pa.size() && pa[end] == x && pb[end] == x) ++end;
          const auto run = static_cast<long long>(end - t);
          if (run >= rule.min_consecutive_ticks) credit(a, b, x, run);
          t = end;
        }
      }
    }
  }
  return graph;
}

GraphMetrics graph_metrics(const ContactGraph& graph, std::size_t top_k) {
  GraphMetrics m;
  std::map<AgentId, std::size_t> slot;
  for (const auto& [agent, dept] : graph.nodes) {
    slot[agent] = m.nodes.size();
    m.nodes.push_back({agent, dept, 0, 0, 0, 0});
  }
  for (const auto& [key, w] : graph.edges) {
    const auto [from, to] = key;
    auto& f = m.nodes.at(slot.at(from));
    auto& t = m.nodes.at(slot.at(to));
    ++f.out_degree;
    f.weighted_out += w;
    ++t.in_degree;
    t.weighted_in += w;
    m.department_matrix[{f.department, t.department}] += w;
  }
  for (const auto& n : m.nodes) {
    const auto degree = static_cast<std::size_t>(n.in_degree + n.out_degree);
    if (m.degree_histogram.size() <= degree) m.degree_histogram.resize(degree + 1, 0);
    ++m.degree_histogram[degree];
  }
  std::vector<NodeMetrics> ranked = m.nodes;
  std::stable_sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
    return a.weighted_total() > b.weighted_total();
  });
  for (std::size_t i = 0; i < ranked.size() && i < top_k; ++i)
    m.hubs.push_back(ranked[i].agent);
  return m;
}

std::map<std::pair<AgentId, AgentId>, long long> collapse_undirected(
    const ContactGraph& graph) {
  std::map<std::pair<AgentId, AgentId>, long long> out;
  for (const auto& [key, w] : graph.edges)
    out[{std::min(key.first, key.second), std::max(key.first, key.second)}] += w;
  return out;
}

GraphFormat parse_graph_format(std::string_view name) {
  if (name == "dot") return GraphFormat::dot;
  if (name == "dot_undirected") return GraphFormat::dot_undirected;
  if (name == "edge_csv") return GraphFormat::edge_csv;
  throw InvalidArgument(fmt::format("unknown graph format \"{}\"", name));
}

std::string_view department_shape(std::string_view department) {
  std::string lower(department);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "research") return "square";
  if (lower == "development") return "diamond";
  if (lower == "workshops") return "oval";
  return "hexagon";
}

std::string export_graph(const ContactGraph& graph, GraphFormat format) {
  std::string out;
  if (format == GraphFormat::edge_csv) {
    out += "from,to,weight\n";
    for (const auto& [key, w] : graph.edges)
      out += fmt::format("{},{},{}\n", key.first, key.second, w);
    return out;
  }
  const bool directed = format == GraphFormat::dot;
  out += directed ? "digraph contacts {\n" : "graph contacts {\n";
  out += "  node [style=filled, fillcolor=white];\n";
  for (const auto& [agent, dept] : graph.nodes)
    out += fmt::format("  \"P{0}\" [label=\"P{0}\", shape={1}, department=\"{2}\"];\n",
                       agent, department_shape(dept), dept);
  if (directed) {
    for (const auto& [key, w] : graph.edges)
      out += fmt::format("  \"P{}\" -> \"P{}\" [label=\"{}\", weight={}];\n",
                         key.first, key.second, w, w);
  } else {
    for (const auto& [key, w] : collapse_undirected(graph))
      out += fmt::format("  \"P{}\" -- \"P{}\" [label=\"{}\", weight={}];\n",
                         key.first, key.second, w, w);
  }
  out += "}\n";
  return out;
}

}  // namespace officelab
