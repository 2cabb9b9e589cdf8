#pragma once

// Bipartite interference graph between node groups U and V, plus the
// joint (edge set, activity, queue) state evolved by the simulator.
//
// Node ids are dense 0-based integers per side. External formats label
// them "u3", "v1". Edge slots are indexed u * n + v over a dense
// presence bitmap; at desk scale (m * n <= 4096) linear scans are fine.

#include <cstdint>
#include <string>
#include <vector>

namespace radyn {

enum class Side { U, V };

struct NodeRef {
  Side side;
  int index;
};

inline std::string node_label(NodeRef w) {
  return (w.side == Side::U ? "u" : "v") + std::to_string(w.index);
}

class BipartiteGraph {
 public:
  BipartiteGraph(int m, int n);

  static BipartiteGraph complete(int m, int n);
  // Each slot present independently with probability p (seeded).
  static BipartiteGraph random(int m, int n, double p, uint64_t seed);
  // {"m":..,"n":..,"edges":[[u,v],..]} or {"m":..,"n":..,"topology":...}
  // where topology is "complete" or {"random_p":p,"seed":s}.
  static BipartiteGraph from_json_text(const std::string& text);

  int m() const { return m_; }
  int n() const { return n_; }
  int edge_count() const { return edges_; }
  bool is_complete() const { return edges_ == m_ * n_; }

  bool has_edge(int u, int v) const { return present_[slot(u, v)] != 0; }
  void add_edge(int u, int v);     // rejects duplicates
  void remove_edge(int u, int v);  // rejects absent edges
  void toggle_edge(int u, int v);

  int degree(NodeRef w) const;
  // Neighbor ids on the opposite side, ascending.
  std::vector<int> neighbors(NodeRef w) const;

  std::string to_json_text() const;

  int slot(int u, int v) const { return u * n_ + v; }
  void check_node(Side side, int id) const;

 private:
  void check_edge_ids(int u, int v) const;

  int m_;
  int n_;
  int edges_ = 0;
  std::vector<uint8_t> present_;
  std::vector<int> deg_u_;
  std::vector<int> deg_v_;
};

struct ActivityState {
  std::vector<uint8_t> active_u;
  std::vector<uint8_t> active_v;

  ActivityState(int m, int n) : active_u(m, 0), active_v(n, 0) {}
  uint8_t& at(NodeRef w) {
    return w.side == Side::U ? active_u[w.index] : active_v[w.index];
  }
  uint8_t at(NodeRef w) const {
    return w.side == Side::U ? active_u[w.index] : active_v[w.index];
  }
};

// The seven feasible edge-flip scenarios, named by the activity of the
// (U, V) endpoints at flip time. An edge between two active endpoints
// cannot exist, so there is no vanish case for active/active; an edge
// appearing between two active endpoints forces the U endpoint off.
enum class FlipScenario {
  AppearInactiveInactive,
  AppearInactiveActive,
  AppearActiveInactive,
  AppearActiveActive,
  VanishInactiveInactive,
  VanishInactiveActive,
  VanishActiveInactive,
};

const char* flip_scenario_name(FlipScenario s);

struct FlipEffect {
  FlipScenario scenario;
  bool forced_deactivation;  // U endpoint was pushed off by the new edge
};

// Edge set + activity + queues + clock, with incrementally maintained
// active-degree counters. Queue values are plain numbers here; lazy
// drain bookkeeping for active nodes lives in the engine.
class DynamicGraphState {
 public:
  DynamicGraphState(BipartiteGraph graph, ActivityState activity);

  // All-U-active / all-V-inactive start.
  static DynamicGraphState initial(BipartiteGraph graph);

  const BipartiteGraph& graph() const { return graph_; }
  const ActivityState& activity() const { return activity_; }
  bool active(NodeRef w) const { return activity_.at(w) != 0; }

  int degree(NodeRef w) const { return graph_.degree(w); }
  // Number of active opposite-side neighbors across present edges.
  int active_degree(NodeRef w) const {
    return w.side == Side::U ? adeg_u_[w.index] : adeg_v_[w.index];
  }

  int active_u_count() const { return active_u_count_; }
  int active_v_count() const { return active_v_count_; }

  // Flips activity of w, keeping the hard-core constraint: activating a
  // node with an active neighbor is a programming error.
  void set_active(NodeRef w, bool value);

  // What apply_edge_flip would do, without doing it.
  FlipEffect classify_flip(int u, int v) const;
  // Toggle slot (u, v); on an appearance between two active endpoints the
  // U endpoint deactivates first so the new edge never joins two active
  // nodes. Returns the classification of the applied flip.
  FlipEffect apply_edge_flip(int u, int v);

  bool is_transition_complete() const { return active_v_count_ == n(); }

  int m() const { return graph_.m(); }
  int n() const { return graph_.n(); }

  std::vector<double> queue_u;
  std::vector<double> queue_v;
  double clock = 0.0;

  double& queue(NodeRef w) {
    return w.side == Side::U ? queue_u[w.index] : queue_v[w.index];
  }
  double queue(NodeRef w) const {
    return w.side == Side::U ? queue_u[w.index] : queue_v[w.index];
  }

  // Recomputes active-degree counters from scratch (test support).
  std::vector<int> recount_active_degrees(Side side) const;

 private:
  BipartiteGraph graph_;
  ActivityState activity_;
  std::vector<int> adeg_u_;  // per U node: active V neighbors
  std::vector<int> adeg_v_;  // per V node: active U neighbors
  int active_u_count_ = 0;
  int active_v_count_ = 0;
};

}  // namespace radyn
