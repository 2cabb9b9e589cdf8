// Event engine tests: the exact exponential race (rates, frequencies,
// deadline truncation), single-event application, full transitions with
// known means, cause labeling, determinism, timeouts, and deadlock.

#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

#include "radyn/engine.hpp"

using namespace radyn;

namespace {

ModelParams fixed_params(double r, double beta, double beta_prime,
                         DynamicsSpec dynamics = {}) {
  ModelParams p;
  p.rates.mode = RateMode::Fixed;
  p.rates.beta = beta;
  p.rates.beta_prime = beta_prime;
  p.queues.r = r;
  p.dynamics = dynamics;
  return p;
}

}  // namespace

TEST_CASE("total rate sums every clock in the race") {
  // K_{2,2} at 1_U, fixed rates with r = 16: two deactivation clocks at
  // 1, two blocked V activation clocks at 16^2 = 256, four edge-flip
  // clocks at 0.1, no arrivals.
  DynamicsSpec dyn{DynamicsKind::Regular, 0.1};
  const ModelParams params = fixed_params(16.0, 0.5, 2.0, dyn);
  TransitionEngine engine(BipartiteGraph::complete(2, 2), params, 1);
  CHECK(engine.total_rate() == doctest::Approx(514.4).epsilon(1e-12));
}

TEST_CASE("next_event delay is exponential at the single live rate") {
  // Lone inactive V node with queue 1 and B' = 5, beta' = 2: activation
  // clock at rate 5 and nothing else, so the delay is Exp(5).
  ModelParams params;
  params.rates.B_prime = 5.0;
  params.queues.arrival_rate = 0.0;

  const int n = 100000;
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    DynamicGraphState state(BipartiteGraph(1, 1), ActivityState(1, 1));
    state.queue_v[0] = 1.0;
    TransitionEngine engine(std::move(state), params,
                            static_cast<std::uint64_t>(i));
    CHECK(engine.total_rate() == doctest::Approx(5.0));
    auto [delay, event] = engine.next_event();
    REQUIRE(event.kind == EventKind::ActivationAttempt);
    REQUIRE(event.node.side == Side::V);
    REQUIRE(event.node.index == 0);
    sum += delay;
  }
  CHECK(sum / n == doctest::Approx(0.2).epsilon(0.02));
}

TEST_CASE("event category frequencies match their rate shares") {
  // K_{2,2} at 1_U, fixed r = 16, flips at 10: Z = 2 + 512 + 40 = 554.
  DynamicsSpec dyn{DynamicsKind::Regular, 10.0};
  TransitionEngine engine(BipartiteGraph::complete(2, 2),
                          fixed_params(16.0, 0.5, 2.0, dyn), 7);
  const int n = 100000;
  int flips = 0, deacts = 0, attempts = 0;
  for (int i = 0; i < n; ++i) {
    auto [delay, event] = engine.next_event();
    switch (event.kind) {
      case EventKind::EdgeFlip:
        CHECK(event.u >= 0);
        CHECK(event.u < 2);
        CHECK(event.v >= 0);
        CHECK(event.v < 2);
        ++flips;
        break;
      case EventKind::Deactivation:
        CHECK(event.node.side == Side::U);
        ++deacts;
        break;
      case EventKind::ActivationAttempt:
        CHECK(event.node.side == Side::V);
        ++attempts;
        break;
      default:
        FAIL("unexpected event kind");
    }
  }
  CHECK(std::abs(flips / double(n) - 40.0 / 554.0) <= 0.003);
  CHECK(std::abs(deacts / double(n) - 2.0 / 554.0) <= 0.0015);
  CHECK(std::abs(attempts / double(n) - 512.0 / 554.0) <= 0.003);

  // Rare-category variant: flips at 0.1 give share 0.4 / 514.4.
  DynamicsSpec slow_dyn{DynamicsKind::Regular, 0.1};
  TransitionEngine rare(BipartiteGraph::complete(2, 2),
                        fixed_params(16.0, 0.5, 2.0, slow_dyn), 8);
  int rare_flips = 0;
  for (int i = 0; i < n; ++i)
    if (rare.next_event().second.kind == EventKind::EdgeFlip) ++rare_flips;
  CHECK(std::abs(rare_flips / double(n) - 0.4 / 514.4) <= 0.01);
}

TEST_CASE("queue-empty deadline truncates the exponential race") {
  // Lone active U node with queue 0.5 draining at 1; the only live
  // clock is its rate-1 deactivation. When the Exp(1) draw exceeds 0.5
  // the deterministic deadline fires instead, at exactly 0.5.
  ModelParams params;  // queue mode, deactivate_on_empty = true
  auto make_state = [] {
    DynamicGraphState s(BipartiteGraph(1, 1), ActivityState(1, 1));
    s.set_active({Side::U, 0}, true);
    s.queue_u[0] = 0.5;
    return s;
  };

  int truncations = 0, races_won = 0;
  std::uint64_t truncated_seed = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    TransitionEngine engine(make_state(), params, seed);
    auto [delay, event] = engine.next_event();
    if (event.kind == EventKind::QueueEmpty) {
      CHECK(delay == 0.5);  // deterministic deadline, no rounding
      CHECK(event.node.side == Side::U);
      truncated_seed = seed;
      ++truncations;
      if (truncations == 1) {
        engine.apply_event(delay, event);
        CHECK_FALSE(engine.state().active({Side::U, 0}));
        CHECK(engine.queue_now({Side::U, 0}) == 0.0);
        CHECK(engine.state().clock == 0.5);
      }
    } else {
      CHECK(event.kind == EventKind::Deactivation);
      CHECK(delay < 0.5);
      ++races_won;
    }
  }
  REQUIRE(truncations > 0);  // P(all 20 races beat the deadline) ~ 8e-9
  CHECK(races_won > 0);

  // Same seed without deactivate_on_empty: no deadline, the raw Exp(1)
  // draw survives and the drained queue pins at zero.
  ModelParams lingering = params;
  lingering.deactivate_on_empty = false;
  TransitionEngine engine(make_state(), lingering, truncated_seed);
  auto [delay, event] = engine.next_event();
  CHECK(event.kind == EventKind::Deactivation);
  CHECK(delay > 0.5);
  engine.apply_event(delay, event);
  CHECK(engine.queue_now({Side::U, 0}) == 0.0);
  CHECK_FALSE(engine.state().active({Side::U, 0}));
}

TEST_CASE("apply_event mutates exactly the event's footprint") {
  ModelParams params;
  params.queues.r = 16.0;
  TransitionEngine engine(BipartiteGraph::complete(2, 2), params, 3);

  // Blocked attempt: a no-op that still advances the clock.
  engine.apply_event(0.1, Event{EventKind::ActivationAttempt, {Side::V, 0}});
  CHECK_FALSE(engine.state().active({Side::V, 0}));
  CHECK(engine.state().clock == doctest::Approx(0.1));
  CHECK(engine.queue_now({Side::U, 0}) == doctest::Approx(15.9));  // draining
  CHECK(engine.queue_now({Side::V, 0}) == doctest::Approx(16.0));  // idle

  // Deactivation drops the active degree of both V neighbors.
  engine.apply_event(0.2, Event{EventKind::Deactivation, {Side::U, 0}});
  CHECK_FALSE(engine.state().active({Side::U, 0}));
  CHECK(engine.state().active_degree({Side::V, 0}) == 1);
  CHECK(engine.state().active_degree({Side::V, 1}) == 1);
  CHECK(engine.queue_now({Side::U, 0}) == doctest::Approx(15.7));

  // Unblocked attempt by the drained node puts it back.
  engine.apply_event(0.3, Event{EventKind::ActivationAttempt, {Side::U, 0}});
  CHECK(engine.state().active({Side::U, 0}));
  CHECK(engine.state().active_degree({Side::V, 1}) == 2);
  CHECK(engine.queue_now({Side::U, 0}) == doctest::Approx(15.7));  // was idle

  // Infeasible events are rejected.
  CHECK_THROWS_AS(
      engine.apply_event(0.0, Event{EventKind::Deactivation, {Side::V, 0}}),
      std::logic_error);
  CHECK_THROWS_AS(
      engine.apply_event(0.0, Event{EventKind::ActivationAttempt, {Side::U, 0}}),
      std::logic_error);
  CHECK_THROWS_AS(
      engine.apply_event(-1.0, Event{EventKind::Deactivation, {Side::U, 0}}),
      std::invalid_argument);
}

TEST_CASE("edge flip events toggle presence and can force deactivation") {
  ModelParams params = fixed_params(16.0, 0.5, 2.0);
  TransitionEngine engine(BipartiteGraph::complete(1, 1), params, 4);
  Event flip;
  flip.kind = EventKind::EdgeFlip;
  flip.u = 0;
  flip.v = 0;
  engine.apply_event(0.1, flip);  // vanish under active u
  CHECK_FALSE(engine.state().graph().has_edge(0, 0));
  CHECK(engine.state().active({Side::U, 0}));
  engine.apply_event(0.1, flip);  // reappear, both endpoints unchanged
  CHECK(engine.state().graph().has_edge(0, 0));
  CHECK(engine.state().active({Side::U, 0}));
  CHECK_FALSE(engine.state().active({Side::V, 0}));
}

TEST_CASE("single-edge transition waits one unit on average") {
  // K_{1,1} fixed mode at huge r: T = Exp(1) until the U node dips,
  // then the V node activates at rate r^2 instantly.
  const ModelParams params = fixed_params(1e6, 0.5, 2.0);
  const BipartiteGraph graph = BipartiteGraph::complete(1, 1);
  const int reps = 10000;
  double sum = 0.0;
  for (int i = 0; i < reps; ++i) {
    const TransitionRecord rec = run_transition(graph, params, 1000 + i);
    REQUIRE_FALSE(rec.timed_out);
    REQUIRE(rec.transition_time > 0.0);
    CHECK(rec.activation_order == std::vector<int>{0});
    CHECK(rec.first_activation[0].cause == Cause::Nucleation);
    CHECK(rec.first_activation[0].degree == 1);
    CHECK(rec.first_activation[0].absent_edges == 0);
    CHECK(rec.counts.edge_flips == 0);
    CHECK(rec.residual_active_u.empty());
    CHECK(rec.r == 1e6);
    sum += rec.transition_time;
  }
  CHECK(sum / reps == doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("complete 2x2 transition matches the exact chain mean") {
  // Fixed mode, nu = r^beta = 100: the active-U count performs
  // 2 -> 1 -> {2 or 0} with rates 2, nu, 1, so E[T] = 3/2 + nu/2.
  const ModelParams params = fixed_params(1e4, 0.5, 2.0);
  const BipartiteGraph graph = BipartiteGraph::complete(2, 2);
  const int reps = 10000;
  double sum = 0.0;
  for (int i = 0; i < reps; ++i) {
    const TransitionRecord rec = run_transition(graph, params, 50000 + i);
    REQUIRE_FALSE(rec.timed_out);
    CHECK(rec.counts.edge_flips == 0);  // static dynamics
    CHECK(rec.counts.activations >= 2);
    sum += rec.transition_time;
  }
  CHECK(sum / reps == doctest::Approx(51.5).epsilon(0.04));
}

TEST_CASE("faster U reactivation slows the transition") {
  const BipartiteGraph graph = BipartiteGraph::complete(2, 2);
  auto mean_time = [&](double beta) {
    const ModelParams params = fixed_params(16.0, beta, 4.0);
    double sum = 0.0;
    const int reps = 2000;
    for (int i = 0; i < reps; ++i)
      sum += run_transition(graph, params, 77000 + i).transition_time;
    return sum / reps;
  };
  // nu = 4 versus nu = 64: expected times near 3.5 and 33.5.
  CHECK(mean_time(1.5) > 2.5 * mean_time(0.5));
}

TEST_CASE("isolated V node activates by disconnection") {
  BipartiteGraph g(1, 2);
  g.add_edge(0, 0);  // v1 has no edges at all
  const ModelParams params = fixed_params(16.0, 0.5, 2.0);
  const TransitionRecord rec = run_transition(g, params, 99);
  REQUIRE_FALSE(rec.timed_out);
  CHECK(rec.first_activation[1].cause == Cause::Disconnection);
  CHECK(rec.first_activation[1].degree == 0);
  CHECK(rec.first_activation[1].absent_edges == 1);
  CHECK(rec.first_activation[0].cause == Cause::Nucleation);
  CHECK(rec.first_activation[0].degree == 1);
  CHECK(rec.nucleation_count() == 1);
  CHECK(rec.disconnection_count() == 1);
  CHECK(rec.first_cause() == static_cast<int>(rec.first_activation[rec.activation_order[0]].cause));
}

TEST_CASE("empty V side is already transitioned") {
  const ModelParams params = fixed_params(16.0, 0.5, 2.0);
  const TransitionRecord rec = run_transition(BipartiteGraph(2, 0), params, 5);
  CHECK(rec.transition_time == 0.0);
  CHECK_FALSE(rec.timed_out);
  CHECK(rec.activation_order.empty());
}

TEST_CASE("same seed reproduces the record bit for bit") {
  ModelParams params;  // queue mode
  params.queues.arrival_rate = 0.5;
  params.queues.r = 100.0;
  params.dynamics = DynamicsSpec{DynamicsKind::Regular, 0.5};
  const BipartiteGraph graph = BipartiteGraph::complete(2, 2);
  const TransitionRecord a = run_transition(graph, params, 31337);
  const TransitionRecord b = run_transition(graph, params, 31337);
  CHECK(a.to_json().dump() == b.to_json().dump());
  CHECK(a.counts.arrivals > 0);
  const TransitionRecord c = run_transition(graph, params, 31338);
  CHECK(a.to_json().dump() != c.to_json().dump());
}

TEST_CASE("event cap flags a timeout") {
  ModelParams params = fixed_params(100.0, 0.5, 2.0);
  params.event_cap = 3;  // a 2x2 transition needs at least 4 events
  const TransitionRecord rec =
      run_transition(BipartiteGraph::complete(2, 2), params, 12);
  CHECK(rec.timed_out);
  CHECK(rec.processed_events == 3);
  CHECK(rec.final_clock > 0.0);
}

TEST_CASE("a dead state raises SimulationDeadlock") {
  // Everything inactive with empty queues, no arrivals, static edges:
  // every clock is zero forever.
  ModelParams params;
  params.queues.arrival_rate = 0.0;
  DynamicGraphState state(BipartiteGraph(1, 1), ActivityState(1, 1));
  state.queue_u[0] = 0.0;
  state.queue_v[0] = 0.0;
  TransitionEngine engine(std::move(state), params, 9);
  CHECK_THROWS_AS(engine.next_event(), SimulationDeadlock);

  DynamicGraphState again(BipartiteGraph(1, 1), ActivityState(1, 1));
  TransitionEngine runner(std::move(again), params, 9);
  CHECK_THROWS_AS(runner.run_to_transition(), SimulationDeadlock);
}

TEST_CASE("disconnection sampler matches exponential hitting times") {
  Rng rng(0xD15C0ull);
  const int n = 100000;

  // Single slot at rate 2: plain Exp(2).
  const BipartiteGraph one = BipartiteGraph::complete(1, 1);
  double sum = 0.0;
  for (int i = 0; i < n; ++i) sum += measure_disconnection(one, 0, 2.0, rng);
  CHECK(sum / n == doctest::Approx(0.5).epsilon(0.02));

  // Two slots from degree 2 at rate 1: mean hitting time of 0 is 2.
  const BipartiteGraph two = BipartiteGraph::complete(2, 2);
  sum = 0.0;
  for (int i = 0; i < n; ++i) sum += measure_disconnection(two, 0, 1.0, rng);
  CHECK(sum / n == doctest::Approx(2.0).epsilon(0.02));

  // Already disconnected: zero.
  CHECK(measure_disconnection(BipartiteGraph(2, 2), 1, 1.0, rng) == 0.0);

  CHECK_THROWS_AS(measure_disconnection(two, 0, 0.0, rng), std::invalid_argument);
  CHECK_THROWS_AS(measure_disconnection(two, 5, 1.0, rng), std::invalid_argument);
}
