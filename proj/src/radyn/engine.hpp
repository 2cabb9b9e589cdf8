#pragma once

// Exact event-driven simulation of the transition from all-U-active to
// all-V-active under hard-core interference, queue-driven activation
// rates, and independent edge-flip dynamics.
//
// Between events every clock rate is constant, so the competing
// exponentials race is exact: delay ~ Exp(total rate), category chosen
// proportionally. Queue hits at zero are deterministic deadlines that
// truncate the exponential delay. Failed activation attempts (blocked
// nodes) are part of the race; `next_event`/`apply_event` realize them
// one at a time, while `run_to_transition` aggregates whole runs of them
// between state-changing events with a single Poisson count: same law,
// bounded work.

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "radyn/bipartite_graph.hpp"
#include "radyn/dynamics.hpp"
#include "radyn/queueing.hpp"
#include "radyn/rng.hpp"

namespace radyn {

struct ModelParams {
  RateFunctions rates;
  QueueParams queues;
  DynamicsSpec dynamics;
  bool deactivate_on_empty = true;
  uint64_t event_cap = 100000000;  // processed events per replication

  void validate() const {
    rates.validate();
    queues.validate();
    dynamics.validate();
    if (event_cap == 0) throw std::invalid_argument("event_cap must be positive");
  }
  double edge_flip_rate() const { return dynamics.lambda(queues.r); }
};

enum class EventKind { ActivationAttempt, Deactivation, EdgeFlip, Arrival, QueueEmpty };

const char* event_kind_name(EventKind kind);

struct Event {
  EventKind kind;
  NodeRef node{Side::U, -1};  // node events
  int u = -1;                 // edge events
  int v = -1;
};

enum class Cause { Nucleation, Disconnection };

inline const char* cause_name(Cause c) {
  return c == Cause::Nucleation ? "nucleation" : "disconnection";
}

struct VActivation {
  double time = -1.0;  // first activation; negative if it never happened
  Cause cause = Cause::Nucleation;
  int degree = 0;        // present edges at the activation instant
  int absent_edges = 0;  // m - degree
};

struct EventCounts {
  uint64_t attempts = 0;  // activation attempts, failed ones included
  uint64_t activations = 0;
  uint64_t deactivations = 0;
  uint64_t edge_flips = 0;
  uint64_t arrivals = 0;
  uint64_t queue_empties = 0;
};

struct TransitionRecord {
  double transition_time = 0.0;
  bool timed_out = false;
  double final_clock = 0.0;
  double r = 0.0;
  uint64_t seed = 0;
  std::vector<VActivation> first_activation;  // indexed by V id
  std::vector<int> activation_order;          // V ids, chronological
  std::vector<int> residual_active_u;         // U ids still active at stop
  EventCounts counts;
  uint64_t processed_events = 0;

  // Cause tallies over first activations.
  int nucleation_count() const;
  int disconnection_count() const;
  // Cause of the chronologically first V activation; -1 if none.
  int first_cause() const;

  nlohmann::json to_json() const;
};

struct SimulationDeadlock : std::runtime_error {
  explicit SimulationDeadlock(const std::string& what) : std::runtime_error(what) {}
};

class TransitionEngine {
 public:
  // Starts from all U active, queues at their initial workloads.
  TransitionEngine(const BipartiteGraph& graph, const ModelParams& params,
                   uint64_t seed);
  // Starts from an explicit state (activity and queues as given).
  TransitionEngine(DynamicGraphState state, const ModelParams& params,
                   uint64_t seed);

  // Sum of every clock in the race: activation rates of all inactive
  // nodes (blocked or not), rate-1 deactivations of active nodes, the
  // m*n edge-flip clocks, and one arrival clock per node.
  double total_rate() const;

  // Full-race sample of (delay, event) from the current state. Failed
  // attempts are returned like any other event. The deterministic
  // queue-empty deadline truncates the exponential delay. Throws
  // SimulationDeadlock when no event can ever fire.
  std::pair<double, Event> next_event();

  // Applies one event `delay` after the current clock. The only state
  // mutation point. Rejects events that are infeasible in the current
  // state (deactivating an inactive node, and so on).
  void apply_event(double delay, const Event& event);

  // Runs until every V node is active, the event cap is hit (record
  // flagged timed_out), or no event can ever fire (throws). Runs of
  // no-effect events (blocked attempts, and in fixed-rate mode the
  // zero-duration activate/queue-empty flaps of drained nodes) are
  // aggregated into Poisson attempt counts instead of being stepped
  // individually; every observable keeps its exact law.
  TransitionRecord run_to_transition();

  const DynamicGraphState& state() const { return state_; }
  // Queue of w lazily drained to the current clock.
  double queue_now(NodeRef w) const;

 private:
  struct ClockEntry {
    NodeRef node;
    double rate;
    bool noop;  // blocked attempt or suppressed zero-queue flap
  };
  struct RateTable {
    std::vector<ClockEntry> activation;
    double activation_total = 0.0;
    double activation_noop = 0.0;
    double deactivation_total = 0.0;
    double edge_total = 0.0;
    double arrival_total = 0.0;
    double deadline = std::numeric_limits<double>::infinity();
    NodeRef deadline_node{Side::U, -1};

    double total() const {
      return activation_total + deactivation_total + edge_total + arrival_total;
    }
    double effective() const { return total() - activation_noop; }
  };

  RateTable build_rates(bool classify_noop) const;
  Event select_event(const RateTable& table, double target, bool effective_only);
  void sync_queue(NodeRef w);
  void set_deadline(NodeRef w, double value);
  double deadline(NodeRef w) const;
  void record_activation(NodeRef w);
  TransitionRecord finish_record(bool timed_out) const;

  DynamicGraphState state_;
  ModelParams params_;
  Rng rng_;
  uint64_t seed_;
  std::vector<double> sync_u_, sync_v_;          // last queue sync per node
  std::vector<double> deadline_u_, deadline_v_;  // queue-empty deadlines
  std::vector<VActivation> first_activation_;
  std::vector<int> activation_order_;
  EventCounts counts_;
  uint64_t processed_ = 0;
};

TransitionRecord run_transition(const BipartiteGraph& graph, const ModelParams& params,
                                uint64_t seed);

// First time node v loses all of its present edges when each of the m
// slots flips at rate lambda; simulates only the edge dynamics.
double measure_disconnection(const BipartiteGraph& graph, int v, double lambda,
                             Rng& rng);

}  // namespace radyn
