#pragma once

// Greedy randomized activation-order analysis of a static interference
// graph, the regime classification it induces, and closed-form mean
// transition-time predictions.
//
// One run of the greedy order: at each step pick uniformly among the
// V-nodes of minimum residual degree, then delete the pick together with
// its remaining U-neighbors. The largest residual degree seen, d*, sets
// the nucleation scale r^(beta (d* - 1)); the tie counts n_k set the
// path probability prod 1/n_k.

#include <cstdint>
#include <string>
#include <vector>

#include "radyn/bipartite_graph.hpp"
#include "radyn/dynamics.hpp"
#include "radyn/queueing.hpp"
#include "radyn/rng.hpp"

namespace radyn {

struct AlgorithmStep {
  int chosen_v = -1;
  int residual_degree = 0;       // degree of the pick at its turn
  int tie_count = 0;             // candidates sharing that minimum
  std::vector<int> removed_u;    // U-neighbors deleted with the pick
};

struct ActivationPath {
  std::vector<AlgorithmStep> steps;
  int d_star = 0;
  // Exact probability prod_k 1/tie_count_k of this particular pick
  // sequence under the uniform tie-break.
  uint64_t prob_num = 1;
  uint64_t prob_den = 1;

  double probability() const {
    return static_cast<double>(prob_num) / static_cast<double>(prob_den);
  }
  std::vector<int> order() const;
};

// Single randomized run; tie-breaks consume `rng`.
ActivationPath run_algorithm(const BipartiteGraph& graph, Rng& rng);

struct PathEnsemble {
  std::vector<ActivationPath> paths;  // lexicographic in chosen ids
  int d_star = 0;                     // shared by every path
};

// Exhaustive enumeration of all tie-break outcomes. Guards: n <= max_n
// keeps the recursion honest at desk scale; the path budget stops
// blowups on graphs with many ties (complete graphs have n! paths).
PathEnsemble enumerate_paths(const BipartiteGraph& graph, int max_n = 12,
                             uint64_t max_paths = 2000000);

enum class Regime { Subcritical, Critical, Supercritical };

const char* regime_name(Regime regime);

// Compares beta against 1/(d* - 1); d* <= 1 counts as subcritical for
// every beta (single-step orders have no nucleation bottleneck).
Regime classify_regime(int d_star, double beta);

struct RegimePrediction {
  Regime regime = Regime::Subcritical;
  double prefactor = 1.0;
  double exponent = 0.0;
  bool uses_drain_time = false;  // capped by the initial-workload drain
  bool order_only = false;       // constant not pinned, only the order in r
  std::string source;

  double evaluate(double r) const { return prefactor * std::pow(r, exponent); }
};

// Complete graph K_{m,n}, fixed rates: mean ~ (1/m) r^(beta (m-1)) below
// criticality, (1/m) r at criticality (as long as that stays below the
// drain bound), and the drain bound gamma_u r / (c - rho_u) above.
RegimePrediction predict_fixed_complete(int m, double beta,
                                        const QueueParams& queues);

// Per-path prefactor sum_{k: deg_k = d*} 1 / (tie_count_k * d*).
double path_prefactor(const ActivationPath& path);

// Arbitrary graph, fixed rates: probability-weighted combination of the
// per-path predictions (each clamped by the drain bound at and above
// criticality).
RegimePrediction predict_fixed_arbitrary(const PathEnsemble& ensemble, double beta,
                                         const QueueParams& queues);

// Dynamic graph: fast or constant dynamics give order lambda(r)^{-1};
// slow dynamics r^{-alpha} either competes (alpha <= min(1, beta (d*-1)),
// order r^alpha) or defers to the static prediction.
RegimePrediction predict_dynamic(const DynamicsSpec& dynamics, int d_star,
                                 double beta, const QueueParams& queues);

// Largest degree whose nucleation scale stays below the slow-dynamics
// scale: max { d >= 1 : beta (d - 1) < alpha }.
int d_hat(double beta, double alpha);

}  // namespace radyn
