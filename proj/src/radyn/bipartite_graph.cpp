#include "radyn/bipartite_graph.hpp"

#include <json.hpp>

#include <stdexcept>

#include "radyn/rng.hpp"

namespace radyn {

using nlohmann::json;

BipartiteGraph::BipartiteGraph(int m, int n) : m_(m), n_(n) {
  if (m < 0 || n < 0) throw std::invalid_argument("graph sides must be >= 0");
  present_.assign(static_cast<size_t>(m) * static_cast<size_t>(n), 0);
  deg_u_.assign(m, 0);
  deg_v_.assign(n, 0);
}

BipartiteGraph BipartiteGraph::complete(int m, int n) {
  BipartiteGraph g(m, n);
  for (int u = 0; u < m; ++u)
    for (int v = 0; v < n; ++v) g.add_edge(u, v);
  return g;
}

BipartiteGraph BipartiteGraph::random(int m, int n, double p, uint64_t seed) {
  if (p < 0.0 || p > 1.0)
    throw std::invalid_argument("edge probability must lie in [0, 1]");
  BipartiteGraph g(m, n);
  Rng rng(mix64(seed ^ 0xA24BAED4963EE407ULL));
  for (int u = 0; u < m; ++u)
    for (int v = 0; v < n; ++v)
      if (rng.uniform() < p) g.add_edge(u, v);
  return g;
}

void BipartiteGraph::check_node(Side side, int id) const {
  const int limit = side == Side::U ? m_ : n_;
  if (id < 0 || id >= limit)
    throw std::invalid_argument("node id " + node_label({side, id}) +
                                " out of range");
}

void BipartiteGraph::check_edge_ids(int u, int v) const {
  check_node(Side::U, u);
  check_node(Side::V, v);
}

void BipartiteGraph::add_edge(int u, int v) {
  check_edge_ids(u, v);
  uint8_t& cell = present_[slot(u, v)];
  if (cell) throw std::invalid_argument("duplicate edge (u" + std::to_string(u) +
                                        ", v" + std::to_string(v) + ")");
  cell = 1;
  ++deg_u_[u];
  ++deg_v_[v];
  ++edges_;
}

void BipartiteGraph::remove_edge(int u, int v) {
  check_edge_ids(u, v);
  uint8_t& cell = present_[slot(u, v)];
  if (!cell) throw std::invalid_argument("edge (u" + std::to_string(u) + ", v" +
                                         std::to_string(v) + ") not present");
  cell = 0;
  --deg_u_[u];
  --deg_v_[v];
  --edges_;
}

void BipartiteGraph::toggle_edge(int u, int v) {
  if (has_edge(u, v))
    remove_edge(u, v);
  else
    add_edge(u, v);
}

int BipartiteGraph::degree(NodeRef w) const {
  check_node(w.side, w.index);
  return w.side == Side::U ? deg_u_[w.index] : deg_v_[w.index];
}

std::vector<int> BipartiteGraph::neighbors(NodeRef w) const {
  check_node(w.side, w.index);
  std::vector<int> out;
  if (w.side == Side::U) {
    for (int v = 0; v < n_; ++v)
      if (has_edge(w.index, v)) out.push_back(v);
  } else {
    for (int u = 0; u < m_; ++u)
      if (has_edge(u, w.index)) out.push_back(u);
  }
  return out;
}

BipartiteGraph BipartiteGraph::from_json_text(const std::string& text) {
  json spec;
  try {
    spec = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("graph json malformed: ") + e.what());
  }
  if (!spec.is_object()) throw std::invalid_argument("graph json must be an object");
  for (const auto& kv : spec.items()) {
    const std::string& key = kv.key();
    if (key != "m" && key != "n" && key != "edges" && key != "topology")
      throw std::invalid_argument("unknown graph key \"" + key + "\"");
  }
  if (!spec.contains("m") || !spec.contains("n"))
    throw std::invalid_argument("graph json needs integer fields m and n");
  if (!spec["m"].is_number_integer() || !spec["n"].is_number_integer())
    throw std::invalid_argument("graph fields m and n must be integers");
  const int m = spec["m"].get<int>();
  const int n = spec["n"].get<int>();
  const bool has_edges = spec.contains("edges");
  const bool has_topology = spec.contains("topology");
  if (has_edges == has_topology)
    throw std::invalid_argument("graph json needs exactly one of edges/topology");

  if (has_edges) {
    BipartiteGraph g(m, n);
    const json& edges = spec["edges"];
    if (!edges.is_array()) throw std::invalid_argument("edges must be an array");
    for (const json& e : edges) {
      if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() ||
          !e[1].is_number_integer())
        throw std::invalid_argument("each edge must be an [u, v] integer pair");
      g.add_edge(e[0].get<int>(), e[1].get<int>());
    }
    return g;
  }

  const json& topo = spec["topology"];
  if (topo.is_string()) {
    if (topo.get<std::string>() != "complete")
      throw std::invalid_argument("unknown topology \"" + topo.get<std::string>() +
                                  "\"");
    return complete(m, n);
  }
  if (topo.is_object()) {
    for (const auto& kv : topo.items()) {
      if (kv.key() != "random_p" && kv.key() != "seed")
        throw std::invalid_argument("unknown topology key \"" + kv.key() + "\"");
    }
    if (!topo.contains("random_p") || !topo["random_p"].is_number())
      throw std::invalid_argument("random topology needs numeric random_p");
    const double p = topo["random_p"].get<double>();
    uint64_t seed = 0;
    if (topo.contains("seed")) {
      if (!topo["seed"].is_number_unsigned() && !topo["seed"].is_number_integer())
        throw std::invalid_argument("topology seed must be an integer");
      seed = topo["seed"].get<uint64_t>();
    }
    return random(m, n, p, seed);
  }
  throw std::invalid_argument("topology must be \"complete\" or an object");
}

std::string BipartiteGraph::to_json_text() const {
  json edges = json::array();
  for (int u = 0; u < m_; ++u)
    for (int v = 0; v < n_; ++v)
      if (has_edge(u, v)) edges.push_back(json::array({u, v}));
  json out{{"m", m_}, {"n", n_}, {"edges", edges}};
  return out.dump();
}

const char* flip_scenario_name(FlipScenario s) {
  switch (s) {
    case FlipScenario::AppearInactiveInactive: return "appear-inactive-inactive";
    case FlipScenario::AppearInactiveActive: return "appear-inactive-active";
    case FlipScenario::AppearActiveInactive: return "appear-active-inactive";
    case FlipScenario::AppearActiveActive: return "appear-active-active";
    case FlipScenario::VanishInactiveInactive: return "vanish-inactive-inactive";
    case FlipScenario::VanishInactiveActive: return "vanish-inactive-active";
    case FlipScenario::VanishActiveInactive: return "vanish-active-inactive";
  }
  return "?";
}

DynamicGraphState::DynamicGraphState(BipartiteGraph graph, ActivityState activity)
    : graph_(std::move(graph)), activity_(std::move(activity)) {
  if (static_cast<int>(activity_.active_u.size()) != graph_.m() ||
      static_cast<int>(activity_.active_v.size()) != graph_.n())
    throw std::invalid_argument("activity vectors must match graph sides");
  queue_u.assign(graph_.m(), 0.0);
  queue_v.assign(graph_.n(), 0.0);
  adeg_u_ = recount_active_degrees(Side::U);
  adeg_v_ = recount_active_degrees(Side::V);
  for (uint8_t a : activity_.active_u) active_u_count_ += a;
  for (uint8_t a : activity_.active_v) active_v_count_ += a;
  // Hard-core check on the provided state.
  for (int u = 0; u < m(); ++u)
    if (activity_.active_u[u] && adeg_u_[u] > 0)
      throw std::invalid_argument("initial state violates the hard-core constraint");
}

DynamicGraphState DynamicGraphState::initial(BipartiteGraph graph) {
  ActivityState activity(graph.m(), graph.n());
  for (auto& a : activity.active_u) a = 1;
  return DynamicGraphState(std::move(graph), std::move(activity));
}

std::vector<int> DynamicGraphState::recount_active_degrees(Side side) const {
  const int count = side == Side::U ? graph_.m() : graph_.n();
  std::vector<int> out(count, 0);
  for (int u = 0; u < graph_.m(); ++u)
    for (int v = 0; v < graph_.n(); ++v) {
      if (!graph_.has_edge(u, v)) continue;
      if (side == Side::U)
        out[u] += activity_.active_v[v];
      else
        out[v] += activity_.active_u[u];
    }
  return out;
}

void DynamicGraphState::set_active(NodeRef w, bool value) {
  uint8_t& cell = activity_.at(w);
  if (static_cast<bool>(cell) == value) return;
  if (value && active_degree(w) > 0)
    throw std::logic_error("activation of " + node_label(w) +
                           " would violate the hard-core constraint");
  cell = value ? 1 : 0;
  const int delta = value ? 1 : -1;
  if (w.side == Side::U) {
    active_u_count_ += delta;
    for (int v = 0; v < n(); ++v)
      if (graph_.has_edge(w.index, v)) adeg_v_[v] += delta;
  } else {
    active_v_count_ += delta;
    for (int u = 0; u < m(); ++u)
      if (graph_.has_edge(u, w.index)) adeg_u_[u] += delta;
  }
}

FlipEffect DynamicGraphState::classify_flip(int u, int v) const {
  graph_.check_node(Side::U, u);
  graph_.check_node(Side::V, v);
  const bool present = graph_.has_edge(u, v);
  const bool au = activity_.active_u[u] != 0;
  const bool av = activity_.active_v[v] != 0;
  if (present) {
    if (au && av)
      throw std::logic_error("present edge joins two active nodes; state corrupt");
    if (au) return {FlipScenario::VanishActiveInactive, false};
    if (av) return {FlipScenario::VanishInactiveActive, false};
    return {FlipScenario::VanishInactiveInactive, false};
  }
  if (au && av) return {FlipScenario::AppearActiveActive, true};
  if (au) return {FlipScenario::AppearActiveInactive, false};
  if (av) return {FlipScenario::AppearInactiveActive, false};
  return {FlipScenario::AppearInactiveInactive, false};
}

FlipEffect DynamicGraphState::apply_edge_flip(int u, int v) {
  const FlipEffect effect = classify_flip(u, v);
  if (effect.forced_deactivation) set_active({Side::U, u}, false);
  graph_.toggle_edge(u, v);
  // Presence changed; counters follow for the surviving active endpoint.
  const int delta = graph_.has_edge(u, v) ? 1 : -1;
  if (activity_.active_u[u]) adeg_v_[v] += delta;
  if (activity_.active_v[v]) adeg_u_[u] += delta;
  return effect;
}

}  // namespace radyn
