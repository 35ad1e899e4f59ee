#include "officelab/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <fmt/format.h>

#include "json.hpp"

namespace officelab {

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

std::size_t WorldConfig::agent_index(AgentId id) const {
  for (std::size_t i = 0; i < agents.size(); ++i)
    if (agents[i].id == id) return i;
  throw InvalidArgument(fmt::format("unknown agent {}", id));
}

std::vector<AgentId> WorldConfig::agent_ids() const {
  std::vector<AgentId> ids;
  ids.reserve(agents.size());
  for (const auto& a : agents) ids.push_back(a.id);
  return ids;
}

namespace {

bool is_probability(double p) { return p >= 0.0 && p <= 1.0; }

void require_probability(double p, const std::string& what) {
  if (!is_probability(p))
    throw ConfigError(fmt::format("{} is {} (must be within [0, 1])", what, p));
}

void check_keys(const json& obj, std::initializer_list<std::string_view> allowed,
                std::string_view context) {
  if (!obj.is_object())
    throw ConfigError(fmt::format("{} must be an object", context));
  for (const auto& [key, _] : obj.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
      throw ConfigError(fmt::format("unknown key \"{}\" in {}", key, context));
  }
}

int parse_id_key(const std::string& key, std::string_view context) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(key.data(), key.data() + key.size(), value);
  if (ec != std::errc{} || ptr != key.data() + key.size())
    throw ConfigError(
        fmt::format("{}: key \"{}\" is not a location id", context, key));
  return value;
}

template <typename T>
T get_or(const json& obj, const char* key, T fallback) {
  auto it = obj.find(key);
  return it == obj.end() ? fallback : it->get<T>();
}

struct StayDefaults {
  std::optional<double> base;
  std::map<Tag, double> by_tag;
};

StayDefaults parse_stay_defaults(const json& node, std::string_view context) {
  StayDefaults out;
  if (node.is_number()) {
    out.base = node.get<double>();
    return out;
  }
  check_keys(node, {"default", "by_tag", "by_location"}, context);
  if (node.contains("default")) out.base = node.at("default").get<double>();
  if (node.contains("by_tag"))
    for (const auto& [tag, p] : node.at("by_tag").items())
      out.by_tag[parse_tag(tag)] = p.get<double>();
  return out;
}

FloorPlan parse_floor_plan(const json& node) {
  check_keys(node, {"locations", "edges"}, "floor_plan");
  std::vector<Location> locations;
  const auto& locs = node.at("locations");
  if (!locs.is_array()) throw ConfigError("floor_plan.locations must be a list");
  for (std::size_t i = 0; i < locs.size(); ++i) {
    const auto& l = locs[i];
    check_keys(l, {"id", "name", "tag", "owner"}, "floor_plan location");
    if (l.contains("id") && l.at("id").get<long long>() != static_cast<long long>(i))
      throw ConfigError(fmt::format(
          "location at position {} has id {} (ids must be dense and in order)",
          i, l.at("id").get<long long>()));
    Location loc;
    loc.name = get_or<std::string>(l, "name", fmt::format("L{}", i));
    loc.tag = parse_tag(get_or<std::string>(l, "tag", "other"));
    if (l.contains("owner") && !l.at("owner").is_null())
      loc.owner = l.at("owner").get<AgentId>();
    locations.push_back(std::move(loc));
  }
  std::vector<std::pair<LocationId, LocationId>> edges;
  for (const auto& e : node.value("edges", json::array())) {
    if (!e.is_array() || e.size() != 2)
      throw ConfigError("each floor_plan edge must be a pair [a, b]");
    edges.emplace_back(e[0].get<LocationId>(), e[1].get<LocationId>());
  }
  return FloorPlan(std::move(locations), std::move(edges));
}

ScheduleEvent parse_event(const json& node) {
  check_keys(node,
             {"start_tick", "end_tick", "target", "probability", "label", "days"},
             "schedule event");
  ScheduleEvent ev;
  ev.start_tick = node.at("start_tick").get<int>();
  ev.end_tick = node.at("end_tick").get<int>();
  ev.target = node.at("target").get<LocationId>();
  ev.probability = get_or<double>(node, "probability", 1.0);
  ev.label = get_or<std::string>(node, "label", "");
  ev.days = get_or<std::vector<int>>(node, "days", {});
  return ev;
}

AgentProfile parse_agent(const json& node, const FloorPlan& plan,
                         const StayDefaults& global) {
  check_keys(node,
             {"id", "home", "department", "stay_prob", "destinations", "delta_p",
              "schedule"},
             "agent");
  AgentProfile agent;
  agent.id = node.at("id").get<AgentId>();
  agent.home = node.at("home").get<LocationId>();
  agent.department = get_or<std::string>(node, "department", "Other");
  agent.delta_p = get_or<double>(node, "delta_p", 0.0);

  const std::string ctx = fmt::format("agent {}", agent.id);
  const auto n = plan.size();

  StayDefaults own;
  json by_location = json::object();
  if (node.contains("stay_prob")) {
    own = parse_stay_defaults(node.at("stay_prob"), ctx + " stay_prob");
    if (node.at("stay_prob").is_object())
      by_location = node.at("stay_prob").value("by_location", json::object());
  }
  agent.default_stay = own.base.value_or(global.base.value_or(0.5));
  agent.stay_prob.assign(n, agent.default_stay);
  for (std::size_t x = 0; x < n; ++x) {
    const Tag tag = plan.tag(static_cast<LocationId>(x));
    if (auto it = own.by_tag.find(tag); it != own.by_tag.end())
      agent.stay_prob[x] = it->second;
    else if (auto g = global.by_tag.find(tag); g != global.by_tag.end())
      agent.stay_prob[x] = g->second;
  }
  for (const auto& [key, p] : by_location.items()) {
    const int x = parse_id_key(key, ctx + " stay_prob");
    if (!plan.contains(x))
      throw ConfigError(fmt::format("{} stay_prob references unknown location {}",
                                    ctx, x));
    agent.stay_prob[x] = p.get<double>();
  }

  agent.destinations.assign(n, 0.0);
  const auto& dest = node.at("destinations");
  if (!dest.is_object() || dest.empty())
    throw ConfigError(ctx + " destinations must be a nonempty object");
  for (const auto& [key, p] : dest.items()) {
    const int x = parse_id_key(key, ctx + " destinations");
    if (!plan.contains(x))
      throw ConfigError(fmt::format(
          "{} destinations reference unknown location {}", ctx, x));
    agent.destinations[x] = p.get<double>();
  }

  for (const auto& ev : node.value("schedule", json::array()))
    agent.schedule.push_back(parse_event(ev));
  return agent;
}

SensorSpec parse_sensor(const json& node) {
  check_keys(node,
             {"id", "kind", "coverage", "p_detect", "p_false_positive",
              "p_confuse"},
             "sensor");
  SensorSpec s;
  s.id = node.at("id").get<SensorId>();
  s.kind = parse_sensor_kind(get_or<std::string>(node, "kind", "camera"));
  s.coverage = node.at("coverage").get<std::vector<LocationId>>();
  std::sort(s.coverage.begin(), s.coverage.end());
  s.coverage.erase(std::unique(s.coverage.begin(), s.coverage.end()),
                   s.coverage.end());
  s.p_detect = get_or<double>(node, "p_detect", 0.9);
  s.p_false_positive = get_or<double>(node, "p_false_positive", 0.01);
  s.p_confuse = get_or<double>(node, "p_confuse", 0.05);
  return s;
}

MotionPrior parse_motion(std::string_view name) {
  if (name == "simulator") return MotionPrior::simulator;
  if (name == "adjacent") return MotionPrior::adjacent;
  throw ConfigError(fmt::format("unknown fusion.motion_model \"{}\"", name));
}

std::string_view to_string(MotionPrior m) {
  return m == MotionPrior::simulator ? "simulator" : "adjacent";
}

WorldConfig parse_tree(const json& root) {
  check_keys(root,
             {"floor_plan", "agents", "ticks_per_day", "days", "rng_seed",
              "stay_defaults", "fluctuation_rate", "require_home_stickiness",
              "sensors", "fusion", "analytics", "contacts", "comment"},
             "config");
  for (const char* key : {"floor_plan", "agents", "ticks_per_day", "days", "rng_seed"})
    if (!root.contains(key))
      throw ConfigError(fmt::format("missing required key \"{}\"", key));

  WorldConfig cfg;
  cfg.floor_plan = parse_floor_plan(root.at("floor_plan"));
  StayDefaults global;
  if (root.contains("stay_defaults"))
    global = parse_stay_defaults(root.at("stay_defaults"), "stay_defaults");
  for (const auto& a : root.at("agents"))
    cfg.agents.push_back(parse_agent(a, cfg.floor_plan, global));

  cfg.ticks_per_day = root.at("ticks_per_day").get<int>();
  cfg.days = root.at("days").get<int>();
  cfg.rng_seed = root.at("rng_seed").get<std::uint64_t>();
  cfg.fluctuation_rate = get_or<double>(root, "fluctuation_rate", 0.05);
  cfg.require_home_stickiness =
      get_or<bool>(root, "require_home_stickiness", true);

  for (const auto& s : root.value("sensors", json::array()))
    cfg.sensors.push_back(parse_sensor(s));
  std::sort(cfg.sensors.begin(), cfg.sensors.end(),
            [](const auto& a, const auto& b) { return a.id < b.id; });

  if (root.contains("fusion")) {
    const auto& f = root.at("fusion");
    check_keys(f, {"motion_model", "adjacency_blend"}, "fusion");
    cfg.fusion.motion = parse_motion(get_or<std::string>(f, "motion_model", "simulator"));
    cfg.fusion.adjacency_blend = get_or<double>(f, "adjacency_blend", 1e-3);
  }
  if (root.contains("analytics")) {
    const auto& a = root.at("analytics");
    check_keys(a, {"baseline_alpha", "day_alpha", "min_support", "min_len", "max_len"},
               "analytics");
    cfg.analytics.baseline_alpha = get_or<double>(a, "baseline_alpha", 1.0);
    cfg.analytics.day_alpha = get_or<double>(a, "day_alpha", 0.0);
    cfg.analytics.min_support = get_or<int>(a, "min_support", 2);
    cfg.analytics.min_len = get_or<int>(a, "min_len", 2);
    cfg.analytics.max_len = get_or<int>(a, "max_len", 4);
  }
  if (root.contains("contacts")) {
    const auto& c = root.at("contacts");
    check_keys(c,
               {"min_consecutive_ticks", "excluded_tags", "officemate_exclusion",
                "top_k"},
               "contacts");
    cfg.contacts.min_consecutive_ticks = get_or<int>(c, "min_consecutive_ticks", 10);
    if (c.contains("excluded_tags")) {
      cfg.contacts.excluded_tags.clear();
      for (const auto& t : c.at("excluded_tags"))
        cfg.contacts.excluded_tags.insert(parse_tag(t.get<std::string>()));
    }
    cfg.contacts.officemate_exclusion = get_or<bool>(c, "officemate_exclusion", true);
    cfg.top_k_hubs = get_or<std::size_t>(c, "top_k", 5);
  }
  return cfg;
}

void validate_agent(const AgentProfile& a, const WorldConfig& cfg) {
  const auto& plan = cfg.floor_plan;
  const std::string ctx = fmt::format("agent {}", a.id);
  if (!plan.contains(a.home))
    throw ConfigError(fmt::format("{} home {} is not a location", ctx, a.home));
  if (a.stay_prob.size() != plan.size() || a.destinations.size() != plan.size())
    throw ConfigError(ctx + " tables do not match the number of locations");
  require_probability(a.default_stay, ctx + " default stay_prob");
  require_probability(a.delta_p, ctx + " delta_p");
  double sum = 0.0;
  for (std::size_t x = 0; x < plan.size(); ++x) {
    require_probability(a.stay_prob[x], fmt::format("{} stay_prob at {}", ctx, x));
    require_probability(a.destinations[x],
                        fmt::format("{} destination weight of {}", ctx, x));
    sum += a.destinations[x];
  }
  if (std::abs(sum - 1.0) > 1e-9)
    throw ConfigError(fmt::format("destinations of agent {} sum to {}", a.id, sum));
  if (cfg.require_home_stickiness && a.stay_prob[a.home] < a.default_stay)
    throw ConfigError(fmt::format(
        "{} stay_prob at home ({}) is below its default stay_prob ({})", ctx,
        a.stay_prob[a.home], a.default_stay));
  for (const auto& ev : a.schedule) {
    if (ev.start_tick >= ev.end_tick)
      throw ConfigError(fmt::format(
          "{} schedule event \"{}\" has start_tick {} >= end_tick {}", ctx,
          ev.label, ev.start_tick, ev.end_tick));
    if (ev.start_tick < 0)
      throw ConfigError(fmt::format("{} schedule event \"{}\" starts before tick 0",
                                    ctx, ev.label));
    if (!plan.contains(ev.target))
      throw ConfigError(fmt::format(
          "{} schedule event \"{}\" targets unknown location {}", ctx, ev.label,
          ev.target));
    require_probability(ev.probability,
                        fmt::format("{} schedule event \"{}\" probability", ctx,
                                    ev.label));
    for (int d : ev.days)
      if (d < 0)
        throw ConfigError(fmt::format("{} schedule event \"{}\" lists day {}",
                                      ctx, ev.label, d));
  }
}

}  // namespace

void validate_world(const WorldConfig& cfg) {
  const auto& plan = cfg.floor_plan;
  if (plan.size() == 0) throw ConfigError("floor_plan has no locations");
  if (!plan.is_connected()) throw ConfigError("floor_plan is not connected");
  if (cfg.agents.empty()) throw ConfigError("config has no agents");
  if (cfg.ticks_per_day < 1)
    throw ConfigError(fmt::format("ticks_per_day is {} (must be >= 1)", cfg.ticks_per_day));
  if (cfg.days < 1)
    throw ConfigError(fmt::format("days is {} (must be >= 1)", cfg.days));
  require_probability(cfg.fluctuation_rate, "fluctuation_rate");

  std::set<AgentId> ids;
  for (const auto& a : cfg.agents) {
    if (!ids.insert(a.id).second)
      throw ConfigError(fmt::format("duplicate agent id {}", a.id));
    validate_agent(a, cfg);
  }

  std::map<AgentId, LocationId> owned;
  for (std::size_t x = 0; x < plan.size(); ++x) {
    const auto& owner = plan.location(static_cast<LocationId>(x)).owner;
    if (!owner) continue;
    if (!ids.count(*owner))
      throw ConfigError(fmt::format("location {} is owned by unknown agent {}", x, *owner));
    if (auto [it, fresh] = owned.emplace(*owner, static_cast<LocationId>(x)); !fresh)
      throw ConfigError(fmt::format("agent {} owns both location {} and {}",
                                    *owner, it->second, x));
    if (cfg.agents[cfg.agent_index(*owner)].home != static_cast<LocationId>(x))
      throw ConfigError(fmt::format(
          "location {} is owned by agent {} whose home is elsewhere", x, *owner));
  }

  std::set<SensorId> sensor_ids;
  for (const auto& s : cfg.sensors) {
    const std::string ctx = fmt::format("sensor {}", s.id);
    if (!sensor_ids.insert(s.id).second)
      throw ConfigError(fmt::format("duplicate sensor id {}", s.id));
    if (s.coverage.empty()) throw ConfigError(ctx + " has empty coverage");
    for (LocationId x : s.coverage)
      if (!plan.contains(x))
        throw ConfigError(fmt::format("{} covers unknown location {}", ctx, x));
    require_probability(s.p_detect, ctx + " p_detect");
    require_probability(s.p_false_positive, ctx + " p_false_positive");
    require_probability(s.p_confuse, ctx + " p_confuse");
  }

  require_probability(cfg.fusion.adjacency_blend, "fusion.adjacency_blend");
  const auto& an = cfg.analytics;
  if (an.baseline_alpha < 0 || an.day_alpha < 0)
    throw ConfigError("analytics smoothing alphas must be nonnegative");
  if (an.min_len < 2 || an.max_len < an.min_len)
    throw ConfigError(fmt::format(
        "analytics requires 2 <= min_len <= max_len (got {} and {})", an.min_len,
        an.max_len));
  if (an.min_support < 1) throw ConfigError("analytics.min_support must be >= 1");
  if (cfg.contacts.min_consecutive_ticks < 1)
    throw ConfigError("contacts.min_consecutive_ticks must be >= 1");
}

WorldConfig parse_config(std::string_view text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(fmt::format("parse error: {}", e.what()));
  }
  WorldConfig cfg;
  try {
    cfg = parse_tree(root);
  } catch (const json::exception& e) {
    throw ConfigError(fmt::format("malformed config: {}", e.what()));
  }
  validate_world(cfg);
  return cfg;
}

WorldConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(fmt::format("cannot open config {}", path.string()));
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

std::string serialize_config(const WorldConfig& cfg) {
  ordered_json root;
  ordered_json plan;
  plan["locations"] = ordered_json::array();
  for (std::size_t i = 0; i < cfg.floor_plan.size(); ++i) {
    const auto& l = cfg.floor_plan.location(static_cast<LocationId>(i));
    ordered_json loc;
    loc["id"] = i;
    loc["name"] = l.name;
    loc["tag"] = std::string(to_string(l.tag));
    if (l.owner) loc["owner"] = *l.owner;
    plan["locations"].push_back(loc);
  }
  plan["edges"] = ordered_json::array();
  for (auto [a, b] : cfg.floor_plan.edges())
    plan["edges"].push_back({a, b});
  root["floor_plan"] = plan;

  root["agents"] = ordered_json::array();
  for (const auto& a : cfg.agents) {
    ordered_json agent;
    agent["id"] = a.id;
    agent["home"] = a.home;
    agent["department"] = a.department;
    ordered_json stay;
    stay["default"] = a.default_stay;
    ordered_json by_loc = ordered_json::object();
    for (std::size_t x = 0; x < a.stay_prob.size(); ++x)
      if (a.stay_prob[x] != a.default_stay) by_loc[std::to_string(x)] = a.stay_prob[x];
    stay["by_location"] = by_loc;
    agent["stay_prob"] = stay;
    ordered_json dest = ordered_json::object();
    for (std::size_t x = 0; x < a.destinations.size(); ++x)
      if (a.destinations[x] != 0.0) dest[std::to_string(x)] = a.destinations[x];
    agent["destinations"] = dest;
    agent["delta_p"] = a.delta_p;
    agent["schedule"] = ordered_json::array();
    for (const auto& ev : a.schedule) {
      ordered_json e;
      e["start_tick"] = ev.start_tick;
      e["end_tick"] = ev.end_tick;
      e["target"] = ev.target;
      e["probability"] = ev.probability;
      e["label"] = ev.label;
      if (!ev.days.empty()) e["days"] = ev.days;
      agent["schedule"].push_back(e);
    }
    root["agents"].push_back(agent);
  }
  root["ticks_per_day"] = cfg.ticks_per_day;
  root["days"] = cfg.days;
  root["rng_seed"] = cfg.rng_seed;
  root["fluctuation_rate"] = cfg.fluctuation_rate;
  root["require_home_stickiness"] = cfg.require_home_stickiness;

  root["sensors"] = ordered_json::array();
  for (const auto& s : cfg.sensors) {
    ordered_json sensor;
    sensor["id"] = s.id;
    sensor["kind"] = std::string(to_string(s.kind));
    sensor["coverage"] = s.coverage;
    sensor["p_detect"] = s.p_detect;
    sensor["p_false_positive"] = s.p_false_positive;
    sensor["p_confuse"] = s.p_confuse;
    root["sensors"].push_back(sensor);
  }
  root["fusion"] = {{"motion_model", std::string(to_string(cfg.fusion.motion))},
                    {"adjacency_blend", cfg.fusion.adjacency_blend}};
  root["analytics"] = {{"baseline_alpha", cfg.analytics.baseline_alpha},
                       {"day_alpha", cfg.analytics.day_alpha},
                       {"min_support", cfg.analytics.min_support},
                       {"min_len", cfg.analytics.min_len},
                       {"max_len", cfg.analytics.max_len}};
  ordered_json tags = ordered_json::array();
  for (Tag t : cfg.contacts.excluded_tags) tags.push_back(std::string(to_string(t)));
  root["contacts"] = {{"min_consecutive_ticks", cfg.contacts.min_consecutive_ticks},
                      {"excluded_tags", tags},
                      {"officemate_exclusion", cfg.contacts.officemate_exclusion},
                      {"top_k", cfg.top_k_hubs}};
  return root.dump(2) + "\n";
}

void save_config(const WorldConfig& cfg, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(fmt::format("cannot write {}", path.string()));
  out << serialize_config(cfg);
}

}  // namespace officelab
