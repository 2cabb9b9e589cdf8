#include "radyn/activation_order.hpp"

#include <algorithm>
#include <stdexcept>

namespace radyn {

namespace {

struct Residual {
  const BipartiteGraph* graph;
  std::vector<uint8_t> alive_u;
  std::vector<uint8_t> alive_v;

  explicit Residual(const BipartiteGraph& g)
      : graph(&g), alive_u(g.m(), 1), alive_v(g.n(), 1) {}

  int degree(int v) const {
    int deg = 0;
    for (int u = 0; u < graph->m(); ++u)
      if (alive_u[u] && graph->has_edge(u, v)) ++deg;
    return deg;
  }

  // Minimum residual degree and the ascending list of nodes attaining it.
  std::pair<int, std::vector<int>> min_candidates() const {
    int best = -1;
    std::vector<int> ties;
    for (int v = 0; v < graph->n(); ++v) {
      if (!alive_v[v]) continue;
      const int deg = degree(v);
      if (best < 0 || deg < best) {
        best = deg;
        ties.assign(1, v);
      } else if (deg == best) {
        ties.push_back(v);
      }
    }
    return {best, ties};
  }

  AlgorithmStep remove(int v, int deg, int tie_count) {
    AlgorithmStep step;
    step.chosen_v = v;
    step.residual_degree = deg;
    step.tie_count = tie_count;
    for (int u = 0; u < graph->m(); ++u)
      if (alive_u[u] && graph->has_edge(u, v)) {
        alive_u[u] = 0;
        step.removed_u.push_back(u);
      }
    alive_v[v] = 0;
    return step;
  }

  void restore(const AlgorithmStep& step) {
    alive_v[step.chosen_v] = 1;
    for (int u : step.removed_u) alive_u[u] = 1;
  }
};

void finish_path(ActivationPath& path) {
  path.d_star = 0;
  path.prob_num = 1;
  path.prob_den = 1;
  for (const AlgorithmStep& step : path.steps) {
    path.d_star = std::max(path.d_star, step.residual_degree);
    path.prob_den *= static_cast<uint64_t>(step.tie_count);
  }
}

void enumerate_rec(Residual& residual, ActivationPath& partial, PathEnsemble& out,
                   uint64_t max_paths) {
  auto [deg, ties] = residual.min_candidates();
  if (deg < 0) {
    ActivationPath path = partial;
    finish_path(path);
    out.paths.push_back(std::move(path));
    if (out.paths.size() > max_paths)
      throw std::length_error(
          "admissible path budget exceeded; sample with run_algorithm instead");
    return;
  }
  for (int v : ties) {
    AlgorithmStep step = residual.remove(v, deg, static_cast<int>(ties.size()));
    partial.steps.push_back(step);
    enumerate_rec(residual, partial, out, max_paths);
    partial.steps.pop_back();
    residual.restore(step);
  }
}

}  // namespace

std::vector<int> ActivationPath::order() const {
  std::vector<int> ids;
  ids.reserve(steps.size());
  for (const AlgorithmStep& step : steps) ids.push_back(step.chosen_v);
  return ids;
}

ActivationPath run_algorithm(const BipartiteGraph& graph, Rng& rng) {
  Residual residual(graph);
  ActivationPath path;
  for (int step = 0; step < graph.n(); ++step) {
    auto [deg, ties] = residual.min_candidates();
    const int pick = ties[rng.uniform_index(ties.size())];
    path.steps.push_back(residual.remove(pick, deg, static_cast<int>(ties.size())));
  }
  finish_path(path);
  return path;
}

PathEnsemble enumerate_paths(const BipartiteGraph& graph, int max_n,
                             uint64_t max_paths) {
  if (graph.n() > max_n)
    throw std::length_error("path enumeration limited to n <= " +
                            std::to_string(max_n) +
                            " V-nodes; sample with run_algorithm instead");
  PathEnsemble out;
  Residual residual(graph);
  ActivationPath partial;
  enumerate_rec(residual, partial, out, max_paths);
  if (!out.paths.empty()) out.d_star = out.paths.front().d_star;
  return out;
}

const char* regime_name(Regime regime) {
  switch (regime) {
    case Regime::Subcritical: return "subcritical";
    case Regime::Critical: return "critical";
    case Regime::Supercritical: return "supercritical";
  }
  return "?";
}

Regime classify_regime(int d_star, double beta) {
  if (!(beta > 0.0)) throw std::invalid_argument("beta must be positive");
  if (d_star <= 1) return Regime::Subcritical;
  const double threshold = 1.0 / (d_star - 1);
  if (beta < threshold) return Regime::Subcritical;
  if (beta == threshold) return Regime::Critical;
  return Regime::Supercritical;
}

namespace {

double drain_prefactor(const QueueParams& queues) {
  const double net = queues.drain_speed - queues.rho_u();
  if (net <= 0.0) throw std::domain_error("rho_u >= drain_speed");
  return queues.gamma_u / net;
}

}  // namespace

RegimePrediction predict_fixed_complete(int m, double beta,
                                        const QueueParams& queues) {
  if (m < 1) throw std::invalid_argument("m must be >= 1");
  RegimePrediction p;
  p.regime = classify_regime(m, beta);
  p.source = "complete-fixed";
  const double drain = drain_prefactor(queues);
  switch (p.regime) {
    case Regime::Subcritical:
      p.prefactor = 1.0 / m;
      p.exponent = beta * (m - 1);
      break;
    case Regime::Critical:
      p.prefactor = 1.0 / m;
      p.exponent = 1.0;
      if (p.prefactor >= drain) {
        p.prefactor = drain;
        p.uses_drain_time = true;
      }
      break;
    case Regime::Supercritical:
      p.prefactor = drain;
      p.exponent = 1.0;
      p.uses_drain_time = true;
      break;
  }
  return p;
}

double path_prefactor(const ActivationPath& path) {
  if (path.d_star < 1)
    throw std::invalid_argument("prefactor undefined for d* < 1");
  double sum = 0.0;
  for (const AlgorithmStep& step : path.steps)
    if (step.residual_degree == path.d_star)
      sum += 1.0 / (static_cast<double>(step.tie_count) * path.d_star);
  return sum;
}

RegimePrediction predict_fixed_arbitrary(const PathEnsemble& ensemble, double beta,
                                         const QueueParams& queues) {
  if (ensemble.paths.empty()) throw std::invalid_argument("no admissible paths");
  RegimePrediction p;
  p.source = "path-sum-fixed";
  if (ensemble.d_star < 1) {
    // Every node activates at residual degree zero; no nucleation scale.
    p.regime = Regime::Subcritical;
    p.order_only = true;
    p.source = "path-sum-degenerate";
    return p;
  }
  p.regime = classify_regime(ensemble.d_star, beta);
  const double drain = drain_prefactor(queues);
  double weighted = 0.0;
  bool clamped = false;
  for (const ActivationPath& path : ensemble.paths) {
    double pref = path_prefactor(path);
    if (p.regime != Regime::Subcritical && pref >= drain) {
      pref = drain;
      clamped = true;
    }
    weighted += path.probability() * pref;
  }
  switch (p.regime) {
    case Regime::Subcritical:
      p.prefactor = weighted;
      p.exponent = beta * (ensemble.d_star - 1);
      break;
    case Regime::Critical:
      p.prefactor = weighted;
      p.exponent = 1.0;
      p.uses_drain_time = clamped;
      break;
    case Regime::Supercritical:
      p.prefactor = drain;
      p.exponent = 1.0;
      p.uses_drain_time = true;
      break;
  }
  return p;
}

RegimePrediction predict_dynamic(const DynamicsSpec& dynamics, int d_star,
                                 double beta, const QueueParams& queues) {
  dynamics.validate();
  RegimePrediction p;
  p.regime = classify_regime(d_star, beta);
  switch (dynamics.kind) {
    case DynamicsKind::Static:
      throw std::invalid_argument("static dynamics: use the fixed-graph predictors");
    case DynamicsKind::Fast:
      p.prefactor = 1.0;
      p.exponent = -dynamics.value;
      p.order_only = true;
      p.source = "dynamic-fast";
      return p;
    case DynamicsKind::Regular:
      p.prefactor = 1.0 / dynamics.value;
      p.exponent = 0.0;
      p.order_only = true;
      p.source = "dynamic-regular";
      return p;
    case DynamicsKind::Slow:
      break;
  }
  const double alpha = dynamics.value;
  const double nucleation = d_star <= 1 ? 0.0 : beta * (d_star - 1);
  const double threshold = std::min(1.0, nucleation);
  if (alpha <= threshold && threshold > 0.0) {
    p.prefactor = 1.0;
    p.exponent = alpha;
    p.order_only = true;
    p.source = "dynamic-slow-competitive";
    return p;
  }
  // Dynamics too slow to matter: the static picture decides. Exact bound
  // in the supercritical regime, order-only otherwise (the caller can
  // substitute a path-based static prefactor when it has one).
  if (p.regime == Regime::Supercritical) {
    p.prefactor = drain_prefactor(queues);
    p.exponent = 1.0;
    p.uses_drain_time = true;
    p.source = "dynamic-slow-static-drain";
    return p;
  }
  p.prefactor = 1.0;
  p.exponent = p.regime == Regime::Critical ? 1.0 : nucleation;
  p.order_only = true;
  p.source = "dynamic-slow-static-order";
  return p;
}

int d_hat(double beta, double alpha) {
  if (!(beta > 0.0) || !(alpha > 0.0))
    throw std::invalid_argument("beta and alpha must be positive");
  int d = 1;
  while (beta * d < alpha && d < 1000000) ++d;
  return d;
}

}  // namespace radyn
