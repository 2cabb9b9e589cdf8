#pragma once

// Independent cross-checks for the closed-form results, implemented on
// purpose with different algorithms than the library paths they vouch
// for: adaptive quadrature against the phase-type density, a memoized
// minimax search against the greedy elimination degree, exact rational
// accumulation against the path probabilities.

#include <functional>
#include <string>
#include <vector>

#include "radyn/bipartite_graph.hpp"

namespace radyn {

// Adaptive Simpson quadrature to absolute tolerance `tol`.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double tol);

// Smallest achievable value, over every V elimination order, of the
// largest residual degree at removal. Exhaustive with memoization on the
// removed set; n <= 16.
int minimax_elimination_degree(const BipartiteGraph& graph);

struct OracleCheck {
  std::string name;
  bool pass = false;
  std::string detail;
};

// Deterministic self-check suite; every entry should pass.
std::vector<OracleCheck> run_oracle_checks();

}  // namespace radyn
