#include "radyn/engine.hpp"

#include <algorithm>
#include <cmath>

namespace radyn {

const char* dynamics_kind_name(DynamicsKind kind) {
  switch (kind) {
    case DynamicsKind::Static: return "static";
    case DynamicsKind::Fast: return "fast";
    case DynamicsKind::Regular: return "regular";
    case DynamicsKind::Slow: return "slow";
  }
  return "?";
}

const char* event_kind_name(EventKind kind) {
  switch (kind) {
    case EventKind::ActivationAttempt: return "activation_attempt";
    case EventKind::Deactivation: return "deactivation";
    case EventKind::EdgeFlip: return "edge_flip";
    case EventKind::Arrival: return "arrival";
    case EventKind::QueueEmpty: return "queue_empty";
  }
  return "?";
}

int TransitionRecord::nucleation_count() const {
  int count = 0;
  for (const VActivation& a : first_activation)
    if (a.time >= 0.0 && a.cause == Cause::Nucleation) ++count;
  return count;
}

int TransitionRecord::disconnection_count() const {
  int count = 0;
  for (const VActivation& a : first_activation)
    if (a.time >= 0.0 && a.cause == Cause::Disconnection) ++count;
  return count;
}

int TransitionRecord::first_cause() const {
  if (activation_order.empty()) return -1;
  return static_cast<int>(first_activation[activation_order.front()].cause);
}

nlohmann::json TransitionRecord::to_json() const {
  nlohmann::json activations = nlohmann::json::array();
  for (size_t v = 0; v < first_activation.size(); ++v) {
    const VActivation& a = first_activation[v];
    if (a.time < 0.0) {
      activations.push_back({{"v", v}, {"activated", false}});
    } else {
      activations.push_back({{"v", v},
                             {"activated", true},
                             {"time", a.time},
                             {"cause", cause_name(a.cause)},
                             {"degree", a.degree},
                             {"absent_edges", a.absent_edges}});
    }
  }
  return nlohmann::json{
      {"transition_time", transition_time},
      {"timed_out", timed_out},
      {"final_clock", final_clock},
      {"r", r},
      {"seed", seed},
      {"first_activation", activations},
      {"activation_order", activation_order},
      {"residual_active_u", residual_active_u},
      {"processed_events", processed_events},
      {"counts",
       {{"activation_attempts", counts.attempts},
        {"activations", counts.activations},
        {"deactivations", counts.deactivations},
        {"edge_flips", counts.edge_flips},
        {"arrivals", counts.arrivals},
        {"queue_empties", counts.queue_empties}}}};
}

TransitionEngine::TransitionEngine(const BipartiteGraph& graph,
                                   const ModelParams& params, uint64_t seed)
    : TransitionEngine(
          [&] {
            DynamicGraphState s = DynamicGraphState::initial(graph);
            for (int u = 0; u < graph.m(); ++u)
              s.queue_u[u] = params.queues.initial_queue(Side::U);
            for (int v = 0; v < graph.n(); ++v)
              s.queue_v[v] = params.queues.initial_queue(Side::V);
            return s;
          }(),
          params, seed) {}

TransitionEngine::TransitionEngine(DynamicGraphState state, const ModelParams& params,
                                   uint64_t seed)
    : state_(std::move(state)), params_(params), rng_(seed), seed_(seed) {
  params_.validate();
  if (params_.dynamics.kind == DynamicsKind::Slow && params_.queues.r <= 0.0)
    throw std::invalid_argument("vanishing dynamics needs r > 0");
  const int m = state_.m();
  const int n = state_.n();
  sync_u_.assign(m, state_.clock);
  sync_v_.assign(n, state_.clock);
  const double inf = std::numeric_limits<double>::infinity();
  deadline_u_.assign(m, inf);
  deadline_v_.assign(n, inf);
  if (params_.deactivate_on_empty) {
    for (int u = 0; u < m; ++u)
      if (state_.active({Side::U, u}))
        deadline_u_[u] = state_.clock + state_.queue_u[u] / params_.queues.drain_speed;
    for (int v = 0; v < n; ++v)
      if (state_.active({Side::V, v}))
        deadline_v_[v] = state_.clock + state_.queue_v[v] / params_.queues.drain_speed;
  }
  first_activation_.assign(n, VActivation{});
}

double TransitionEngine::queue_now(NodeRef w) const {
  const double q = state_.queue(w);
  if (!state_.active(w)) return q;
  const double sync = w.side == Side::U ? sync_u_[w.index] : sync_v_[w.index];
  return drained_queue(q, state_.clock - sync, params_.queues.drain_speed);
}

void TransitionEngine::sync_queue(NodeRef w) {
  state_.queue(w) = queue_now(w);
  (w.side == Side::U ? sync_u_ : sync_v_)[w.index] = state_.clock;
}

void TransitionEngine::set_deadline(NodeRef w, double value) {
  (w.side == Side::U ? deadline_u_ : deadline_v_)[w.index] = value;
}

double TransitionEngine::deadline(NodeRef w) const {
  return (w.side == Side::U ? deadline_u_ : deadline_v_)[w.index];
}

TransitionEngine::RateTable TransitionEngine::build_rates(bool classify_noop) const {
  RateTable table;
  const int m = state_.m();
  const int n = state_.n();
  const RateFunctions& rates = params_.rates;
  const double r = params_.queues.r;
  const bool fixed = rates.mode == RateMode::Fixed;

  table.activation.reserve(m + n);
  for (int side_pass = 0; side_pass < 2; ++side_pass) {
    const Side side = side_pass == 0 ? Side::U : Side::V;
    const int count = side == Side::U ? m : n;
    for (int i = 0; i < count; ++i) {
      const NodeRef w{side, i};
      if (state_.active(w)) continue;
      const double q = state_.queue(w);  // inactive queues never drain
      const double rate = rates.activation_rate(side, q, r);
      if (rate <= 0.0) continue;
      bool noop = false;
      if (classify_noop) {
        if (state_.active_degree(w) > 0) {
          noop = true;  // attempt would fail
        } else if (fixed && params_.deactivate_on_empty && q <= 0.0) {
          // Activating would deactivate again in the same instant. That
          // zero-duration flap is unobservable for U nodes; for V nodes
          // it must stay real until the first activation is recorded, or
          // when it would complete the transition.
          if (side == Side::U) {
            noop = true;
          } else {
            const bool recorded = first_activation_[i].time >= 0.0;
            const bool completes = state_.active_v_count() == n - 1;
            noop = recorded && !completes;
          }
        }
      }
      table.activation.push_back({w, rate, noop});
      table.activation_total += rate;
      if (noop) table.activation_noop += rate;
    }
  }

  table.deactivation_total = state_.active_u_count() + state_.active_v_count();
  table.edge_total = static_cast<double>(m) * n * params_.edge_flip_rate();
  table.arrival_total = (m + n) * params_.queues.arrival_rate;

  for (int u = 0; u < m; ++u)
    if (deadline_u_[u] < table.deadline) {
      table.deadline = deadline_u_[u];
      table.deadline_node = {Side::U, u};
    }
  for (int v = 0; v < n; ++v)
    if (deadline_v_[v] < table.deadline) {
      table.deadline = deadline_v_[v];
      table.deadline_node = {Side::V, v};
    }
  return table;
}

double TransitionEngine::total_rate() const { return build_rates(false).total(); }

Event TransitionEngine::select_event(const RateTable& table, double target,
                                     bool effective_only) {
  // Walk the race in a fixed order; `target` was drawn uniform on the
  // matching total. A final fallback absorbs floating-point leftovers.
  for (const ClockEntry& entry : table.activation) {
    if (effective_only && entry.noop) continue;
    target -= entry.rate;
    if (target < 0.0)
      return Event{EventKind::ActivationAttempt, entry.node};
  }
  if (table.deactivation_total > 0.0 && target < table.deactivation_total) {
    for (int u = 0; u < state_.m(); ++u)
      if (state_.active({Side::U, u})) {
        target -= 1.0;
        if (target < 0.0) return Event{EventKind::Deactivation, {Side::U, u}};
      }
    for (int v = 0; v < state_.n(); ++v)
      if (state_.active({Side::V, v})) {
        target -= 1.0;
        if (target < 0.0) return Event{EventKind::Deactivation, {Side::V, v}};
      }
  } else {
    target -= table.deactivation_total;
  }
  if (target < table.edge_total) {
    const auto slot = rng_.uniform_index(
        static_cast<uint64_t>(state_.m()) * static_cast<uint64_t>(state_.n()));
    Event ev{EventKind::EdgeFlip};
    ev.u = static_cast<int>(slot) / state_.n();
    ev.v = static_cast<int>(slot) % state_.n();
    return ev;
  }
  target -= table.edge_total;
  if (table.arrival_total > 0.0) {
    const auto idx =
        rng_.uniform_index(static_cast<uint64_t>(state_.m() + state_.n()));
    const NodeRef w = idx < static_cast<uint64_t>(state_.m())
                          ? NodeRef{Side::U, static_cast<int>(idx)}
                          : NodeRef{Side::V, static_cast<int>(idx) - state_.m()};
    return Event{EventKind::Arrival, w};
  }
  // Rounding pushed the target past every block: take the last live clock.
  for (auto it = table.activation.rbegin(); it != table.activation.rend(); ++it)
    if (!effective_only || !it->noop)
      return Event{EventKind::ActivationAttempt, it->node};
  for (int v = state_.n() - 1; v >= 0; --v)
    if (state_.active({Side::V, v})) return Event{EventKind::Deactivation, {Side::V, v}};
  for (int u = state_.m() - 1; u >= 0; --u)
    if (state_.active({Side::U, u})) return Event{EventKind::Deactivation, {Side::U, u}};
  throw std::logic_error("event selection fell through an empty race");
}

std::pair<double, Event> TransitionEngine::next_event() {
  const RateTable table = build_rates(false);
  const double total = table.total();
  const bool has_deadline = std::isfinite(table.deadline);
  if (total <= 0.0) {
    if (!has_deadline)
      throw SimulationDeadlock("no clock can fire and no queue deadline is pending");
    return {table.deadline - state_.clock,
            Event{EventKind::QueueEmpty, table.deadline_node}};
  }
  const double delay = rng_.exponential(total);
  if (state_.clock + delay >= table.deadline)
    return {table.deadline - state_.clock,
            Event{EventKind::QueueEmpty, table.deadline_node}};
  Event ev = select_event(table, rng_.uniform() * total, false);
  return {delay, ev};
}

void TransitionEngine::apply_event(double delay, const Event& event) {
  if (delay < 0.0) throw std::invalid_argument("event delay must be >= 0");
  state_.clock += delay;
  switch (event.kind) {
    case EventKind::ActivationAttempt: {
      const NodeRef w = event.node;
      if (state_.active(w))
        throw std::logic_error("activation attempt by the active node " +
                               node_label(w));
      ++counts_.attempts;
      if (state_.active_degree(w) > 0) break;  // failed attempt, no effect
      state_.set_active(w, true);
      (w.side == Side::U ? sync_u_ : sync_v_)[w.index] = state_.clock;
      if (params_.deactivate_on_empty)
        set_deadline(w, state_.clock + state_.queue(w) / params_.queues.drain_speed);
      ++counts_.activations;
      if (w.side == Side::V && first_activation_[w.index].time < 0.0)
        record_activation(w);
      break;
    }
    case EventKind::Deactivation: {
      const NodeRef w = event.node;
      if (!state_.active(w))
        throw std::logic_error("deactivation of the inactive node " + node_label(w));
      sync_queue(w);
      state_.set_active(w, false);
      set_deadline(w, std::numeric_limits<double>::infinity());
      ++counts_.deactivations;
      break;
    }
    case EventKind::EdgeFlip: {
      const FlipEffect effect = state_.classify_flip(event.u, event.v);
      if (effect.forced_deactivation) {
        sync_queue({Side::U, event.u});
        set_deadline({Side::U, event.u}, std::numeric_limits<double>::infinity());
      }
      state_.apply_edge_flip(event.u, event.v);
      ++counts_.edge_flips;
      break;
    }
    case EventKind::Arrival: {
      const NodeRef w = event.node;
      sync_queue(w);
      state_.queue(w) += arrival_jump(rng_, params_.queues.service_rate(w.side));
      if (state_.active(w) && params_.deactivate_on_empty)
        set_deadline(w, state_.clock + state_.queue(w) / params_.queues.drain_speed);
      ++counts_.arrivals;
      break;
    }
    case EventKind::QueueEmpty: {
      const NodeRef w = event.node;
      if (!state_.active(w) || !params_.deactivate_on_empty ||
          !std::isfinite(deadline(w)))
        throw std::logic_error("queue-empty event without a pending deadline on " +
                               node_label(w));
      state_.queue(w) = 0.0;
      (w.side == Side::U ? sync_u_ : sync_v_)[w.index] = state_.clock;
      state_.set_active(w, false);
      set_deadline(w, std::numeric_limits<double>::infinity());
      ++counts_.queue_empties;
      break;
    }
  }
  ++processed_;
}

void TransitionEngine::record_activation(NodeRef w) {
  const int degree = state_.degree(w);
  VActivation a;
  a.time = state_.clock;
  a.cause = degree == 0 ? Cause::Disconnection : Cause::Nucleation;
  a.degree = degree;
  a.absent_edges = state_.m() - degree;
  first_activation_[w.index] = a;
  activation_order_.push_back(w.index);
}

TransitionRecord TransitionEngine::finish_record(bool timed_out) const {
  TransitionRecord rec;
  rec.timed_out = timed_out;
  rec.final_clock = state_.clock;
  rec.transition_time = state_.clock;
  rec.r = params_.queues.r;
  rec.seed = seed_;
  rec.first_activation = first_activation_;
  rec.activation_order = activation_order_;
  for (int u = 0; u < state_.m(); ++u)
    if (state_.active({Side::U, u})) rec.residual_active_u.push_back(u);
  rec.counts = counts_;
  rec.processed_events = processed_;
  return rec;
}

TransitionRecord TransitionEngine::run_to_transition() {
  if (state_.is_transition_complete()) return finish_record(false);
  for (;;) {
    if (processed_ >= params_.event_cap) return finish_record(true);
    const RateTable table = build_rates(true);
    const double effective = table.effective();
    const double noop = table.activation_noop;
    const bool has_deadline = std::isfinite(table.deadline);
    if (effective <= 0.0 && !has_deadline)
      throw SimulationDeadlock(
          "transition unreachable: no state-changing clock remains");
    double delay;
    bool fire_deadline = false;
    if (effective <= 0.0) {
      fire_deadline = true;
      delay = table.deadline - state_.clock;
    } else {
      delay = rng_.exponential(effective);
      if (state_.clock + delay >= table.deadline) {
        fire_deadline = true;
        delay = table.deadline - state_.clock;
      }
    }
    Event ev;
    if (fire_deadline) {
      ev = Event{EventKind::QueueEmpty, table.deadline_node};
    } else {
      ev = select_event(table, rng_.uniform() * effective, true);
    }
    // Attempts that cannot change state, realized in bulk. Conditional on
    // the inter-event gap they are Poisson with constant intensity.
    if (noop > 0.0 && delay > 0.0) counts_.attempts += rng_.poisson(noop * delay);
    apply_event(delay, ev);
    if (state_.is_transition_complete()) return finish_record(false);
  }
}

TransitionRecord run_transition(const BipartiteGraph& graph, const ModelParams& params,
                                uint64_t seed) {
  TransitionEngine engine(graph, params, seed);
  return engine.run_to_transition();
}

double measure_disconnection(const BipartiteGraph& graph, int v, double lambda,
                             Rng& rng) {
  graph.check_node(Side::V, v);
  if (!(lambda > 0.0)) throw std::invalid_argument("lambda must be positive");
  const int m = graph.m();
  int present = graph.degree({Side::V, v});
  double t = 0.0;
  while (present > 0) {
    t += rng.exponential(m * lambda);
    if (rng.uniform() * m < present)
      --present;
    else
      ++present;
  }
  return t;
}

}  // namespace radyn
