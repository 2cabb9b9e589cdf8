#pragma once

// First time an m-slot node loses all of its present edges, when every
// slot flips independently at rate lambda. The present-edge count is a
// birth-death chain on {0..m} with down rate k*lambda and up rate
// (m-k)*lambda, absorbing at 0. The mean from d present edges is
// C(m, d) * mu with mu = 1/lambda; the law is phase-type.
//
// The coefficient C(m, d) is computed three independent ways (closed
// double sum, backward recursion, dense linear solve) so each route can
// vouch for the others.

#include <utility>
#include <vector>

namespace radyn {

// Closed form: sum_{k=1}^{d} sum_{n=0}^{m-k} (m-k)! (k-1)! / (n! (m-n)!).
double disconnection_coefficient_sum(int m, int d);

// Backward recursion over increments X_m = 1/m, X_k = (m-k)/k X_{k+1} + 1/k.
double disconnection_coefficient(int m, int d);

double mean_disconnection_time(int m, int d, double mu);

// Mean absorption times from every start 1..m, via Gaussian elimination
// with partial pivoting on the full jump-chain system (independent of the
// two coefficient routes above). out[k-1] = mean from k present edges.
std::vector<double> edge_loss_hitting_times(int m, double mu);

// Phase-type law of the disconnection time from d of m edges present.
// Survival and density are evaluated by uniformization: Poisson-weighted
// powers of the uniformized jump matrix, truncated once the remaining
// Poisson tail mass drops below 1e-12.
class PhaseTypeDist {
 public:
  PhaseTypeDist(int m, int d, double lambda);

  double survival(double x) const;  // P(D > x)
  double density(double x) const;
  double mean() const;              // tridiagonal solve, no uniformization

  int m() const { return m_; }
  int d() const { return d_; }
  double lambda() const { return lambda_; }

  // Uniformization effort grows with m * lambda * x; evaluations beyond
  // 1e5 expected jumps deserve a warning upstream.
  bool well_conditioned(double x) const { return m_ * lambda_ * x <= 1e5; }

 private:
  // weights[j] applied to (row) e_d * P^j; `exit` accumulates the mass
  // landing in state 1 (the only exit state).
  double uniformized_sum(double x, bool want_density) const;

  int m_;
  int d_;
  double lambda_;
};

// Lower and upper tail of D around its scale: for x* = mu * scale_ratio
// returns (P(D <= x*), P(D >= x*)).
std::pair<double, double> concentration_check(int m, int d, double mu,
                                              double scale_ratio);

}  // namespace radyn
