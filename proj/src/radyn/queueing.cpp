#include "radyn/queueing.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace radyn {

void RateFunctions::validate() const {
  if (!(beta > 0.0)) throw std::invalid_argument("beta must be positive");
  if (!(beta_prime > beta + 1.0))
    throw std::invalid_argument("beta_prime must exceed beta + 1");
  if (mode == RateMode::QueueBased) {
    if (!(B > 0.0) || !(B_prime > 0.0))
      throw std::invalid_argument("rate coefficients must be positive");
  }
}

double RateFunctions::activation_rate(Side side, double queue, double r) const {
  const double exponent = side == Side::U ? beta : beta_prime;
  if (mode == RateMode::Fixed) return std::pow(r, exponent);
  if (queue <= 0.0) return 0.0;
  const double coeff = side == Side::U ? B : B_prime;
  return coeff * std::pow(queue, exponent);
}

void QueueParams::validate() const {
  if (arrival_rate < 0.0) throw std::invalid_argument("arrival_rate must be >= 0");
  if (!(service_rate_u > 0.0) || !(service_rate_v > 0.0))
    throw std::invalid_argument("service rates must be positive");
  if (!(drain_speed > 0.0)) throw std::invalid_argument("drain_speed must be positive");
  if (!(gamma_v > 0.0) || gamma_u < gamma_v)
    throw std::invalid_argument("need gamma_u >= gamma_v > 0");
  if (r < 0.0) throw std::invalid_argument("r must be >= 0");
  if (rho_u() >= drain_speed || rho_v() >= drain_speed)
    throw std::invalid_argument("unstable queue: load must stay below drain_speed");
}

double drained_queue(double queue, double duration, double drain_speed) {
  if (duration < 0.0) throw std::invalid_argument("duration must be >= 0");
  return std::max(queue - drain_speed * duration, 0.0);
}

double arrival_jump(Rng& rng, double service_rate) {
  return rng.exponential(service_rate);
}

double expected_drain_time(const QueueParams& params) {
  const double net = params.drain_speed - params.rho_u();
  if (net <= 0.0)
    throw std::domain_error("initial workload never drains: rho_u >= drain_speed");
  return params.gamma_u * params.r / net;
}

}  // namespace radyn
