// Queue mechanics: initial workloads, linear drain with reflection at
// zero, compound-Poisson jumps, activation rate functions, and the
// closed-form drain time.

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "radyn/queueing.hpp"
#include "radyn/rng.hpp"

using namespace radyn;

TEST_CASE("initial queue is gamma times r per side") {
  QueueParams p;
  p.gamma_u = 2.0;
  p.gamma_v = 1.0;
  p.r = 100.0;
  CHECK(p.initial_queue(Side::U) == 200.0);
  CHECK(p.initial_queue(Side::V) == 100.0);
  p.r = 0.0;
  CHECK(p.initial_queue(Side::U) == 0.0);
}

TEST_CASE("drained queue subtracts served work and reflects at zero") {
  CHECK(drained_queue(10.0, 3.0, 1.0) == 7.0);
  CHECK(drained_queue(2.0, 5.0, 1.0) == 0.0);
  CHECK(drained_queue(4.0, 2.0, 1.5) == 1.0);
  CHECK(drained_queue(5.0, 0.0, 3.0) == 5.0);
  CHECK_THROWS_AS(drained_queue(1.0, -0.1, 1.0), std::invalid_argument);
}

TEST_CASE("arrival jump has mean 1/service_rate") {
  Rng rng(20260101ull);
  const int n = 100000;
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    const double j = arrival_jump(rng, 0.5);
    REQUIRE(j > 0.0);
    sum += j;
  }
  CHECK(sum / n == doctest::Approx(2.0).epsilon(0.025));
}

TEST_CASE("activation rate follows the queue in queue mode") {
  RateFunctions f;  // queue mode, B = B' = 1, beta = 0.5, beta' = 2
  CHECK(f.activation_rate(Side::U, 100.0, 7.0) == doctest::Approx(10.0));
  CHECK(f.activation_rate(Side::V, 100.0, 7.0) == doctest::Approx(10000.0));
  CHECK(f.activation_rate(Side::U, 0.0, 7.0) == 0.0);
  CHECK(f.activation_rate(Side::V, 0.0, 7.0) == 0.0);
  f.B = 3.0;
  CHECK(f.activation_rate(Side::U, 4.0, 7.0) == doctest::Approx(6.0));
}

TEST_CASE("activation rate ignores the queue in fixed mode") {
  RateFunctions f;
  f.mode = RateMode::Fixed;
  f.beta = 0.5;
  f.beta_prime = 2.0;
  const double r = 100.0;
  const double u_rate = f.activation_rate(Side::U, 55.0, r);
  CHECK(u_rate == doctest::Approx(10.0));
  CHECK(f.activation_rate(Side::U, 0.0, r) == u_rate);
  CHECK(f.activation_rate(Side::U, 1e9, r) == u_rate);
  CHECK(f.activation_rate(Side::V, 0.0, r) == doctest::Approx(10000.0));
}

TEST_CASE("expected drain time is gamma_u r over net speed") {
  QueueParams p;
  p.arrival_rate = 0.5;  // rho_u = 0.5
  p.r = 100.0;
  CHECK(expected_drain_time(p) == doctest::Approx(200.0));

  p.arrival_rate = 0.0;
  CHECK(expected_drain_time(p) == doctest::Approx(100.0));

  p.r = 0.0;
  CHECK(expected_drain_time(p) == 0.0);

  p.r = 1.0;
  p.arrival_rate = 1.0;  // rho_u = 1 = drain_speed
  CHECK_THROWS_AS(expected_drain_time(p), std::domain_error);
}

TEST_CASE("parameter validation rejects bad input") {
  QueueParams good;
  CHECK_NOTHROW(good.validate());

  QueueParams p = good;
  p.arrival_rate = -0.1;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);

  p = good;
  p.service_rate_v = 0.0;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);

  p = good;
  p.drain_speed = -1.0;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);

  p = good;
  p.gamma_v = 2.0;  // exceeds gamma_u = 1
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);

  p = good;
  p.gamma_v = 0.0;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);

  p = good;
  p.r = -1.0;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);

  p = good;
  p.arrival_rate = 1.5;  // rho = 1.5 >= drain 1
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);

  RateFunctions f;
  CHECK_NOTHROW(f.validate());
  f.beta = 0.0;
  CHECK_THROWS_AS(f.validate(), std::invalid_argument);
  f.beta = 1.0;
  f.beta_prime = 2.0;  // needs beta' > beta + 1
  CHECK_THROWS_AS(f.validate(), std::invalid_argument);
  f.beta = 0.5;
  f.beta_prime = 2.0;
  f.B_prime = 0.0;
  CHECK_THROWS_AS(f.validate(), std::invalid_argument);
  f.B_prime = 1.0;
  f.mode = RateMode::Fixed;  // coefficients unused in fixed mode
  f.B = -5.0;
  CHECK_NOTHROW(f.validate());
}

TEST_CASE("piecewise replay matches the reflection formula") {
  // Free process X(t) = Q0 + A(t) - c t; reflected queue is
  // Q(t) = X(t) - min(0, inf_{s<=t} X(s)). Jumps are positive, so the
  // infimum is attained at 0, just before a jump, or at t itself.
  Rng rng(5150ull);
  const double c = 1.3;
  const double q0 = 2.0;

  std::vector<double> jump_times, jump_sizes;
  double t = 0.0;
  for (int i = 0; i < 200; ++i) {
    t += rng.exponential(0.8);
    jump_times.push_back(t);
    jump_sizes.push_back(arrival_jump(rng, 0.7));
  }

  double q = q0;          // incremental replay via drained_queue
  double x = q0;          // free process
  double x_min = 0.0;     // min(0, running infimum of X)
  double prev = 0.0;
  for (size_t k = 0; k < jump_times.size(); ++k) {
    const double dt = jump_times[k] - prev;
    q = drained_queue(q, dt, c);
    x -= c * dt;
    x_min = std::min(x_min, x);
    CHECK(q == doctest::Approx(x - x_min).epsilon(1e-9));
    q += jump_sizes[k];
    x += jump_sizes[k];
    CHECK(q == doctest::Approx(x - x_min).epsilon(1e-9));
    prev = jump_times[k];
  }
}

TEST_CASE("busy drain of a large workload takes Q0 over (c - rho) on average") {
  // Arrivals at rate 0.5 bringing Exp(1) work, continuous drain at 1:
  // net speed 0.5, so Q0 = 1e4 drains in about 2e4.
  const double lambda = 0.5, service = 1.0, c = 1.0, q0 = 1e4;
  const int reps = 1000;
  double total = 0.0;
  for (int rep = 0; rep < reps; ++rep) {
    Rng rng = Rng::for_replication(99887ull, 0, static_cast<std::uint64_t>(rep));
    double q = q0, time = 0.0;
    while (true) {
      const double dt = rng.exponential(lambda);
      if (q <= c * dt) {
        time += q / c;
        break;
      }
      q -= c * dt;
      time += dt;
      q += arrival_jump(rng, service);
    }
    total += time;
  }
  const double mean = total / reps;
  CHECK(mean == doctest::Approx(q0 / (c - lambda / service)).epsilon(0.03));
}
