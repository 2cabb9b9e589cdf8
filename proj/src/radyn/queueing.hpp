#pragma once

// Queueing side of the model: compound-Poisson input, linear drain at
// speed c while transmitting, reflection at zero, and the activation
// rate functions driven by queue length (or pinned to powers of the
// scale parameter r in fixed mode).

#include <cstdint>

#include "radyn/bipartite_graph.hpp"
#include "radyn/rng.hpp"

namespace radyn {

enum class RateMode { Fixed, QueueBased };

struct RateFunctions {
  RateMode mode = RateMode::QueueBased;
  double B = 1.0;        // U-side coefficient, queue mode only
  double beta = 0.5;     // U-side exponent
  double B_prime = 1.0;  // V-side coefficient, queue mode only
  double beta_prime = 2.0;

  // beta > 0, beta' > beta + 1; coefficients positive in queue mode.
  void validate() const;

  // Activation rate of an inactive node holding the given queue. In queue
  // mode this is B q^beta (resp. B' q^beta'), zero at an empty queue; in
  // fixed mode it is r^beta (resp. r^beta') regardless of the queue.
  double activation_rate(Side side, double queue, double r) const;
};

struct QueueParams {
  double arrival_rate = 0.0;   // packet arrivals per node per unit time
  double service_rate_u = 1.0; // packet sizes are Exp(service_rate) work
  double service_rate_v = 1.0;
  double drain_speed = 1.0;    // work served per unit time while active
  double gamma_u = 1.0;        // initial workload coefficients, gamma_u >= gamma_v > 0
  double gamma_v = 1.0;
  double r = 1.0;              // scale parameter

  double rho_u() const { return arrival_rate / service_rate_u; }
  double rho_v() const { return arrival_rate / service_rate_v; }

  // Positivity, gamma ordering, stability rho < drain_speed on both sides.
  void validate() const;

  double initial_queue(Side side) const {
    return (side == Side::U ? gamma_u : gamma_v) * r;
  }
  double service_rate(Side side) const {
    return side == Side::U ? service_rate_u : service_rate_v;
  }
};

// Queue after serving for `duration` at speed c, reflected at zero.
double drained_queue(double queue, double duration, double drain_speed);

// Work brought by one arriving packet.
double arrival_jump(Rng& rng, double service_rate);

// Time for the initial U-side workload gamma_u * r to reach zero at net
// drain speed (c - rho_u): gamma_u r / (c - rho_u). Throws
// std::domain_error when the queue is unstable (rho_u >= c).
double expected_drain_time(const QueueParams& params);

}  // namespace radyn
