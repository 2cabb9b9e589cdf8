#include "radyn/oracles.hpp"

#include <cmath>
#include <cstdint>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "radyn/activation_order.hpp"
#include "radyn/disconnection.hpp"
#include "radyn/queueing.hpp"

namespace radyn {

namespace {

double simpson_slice(double fa, double fm, double fb, double a, double b) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adapt(const std::function<double(double)>& f, double a, double b, double fa,
             double fm, double fb, double whole, double tol, int depth) {
  const double mid = 0.5 * (a + b);
  const double lm = 0.5 * (a + mid);
  const double rm = 0.5 * (mid + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = simpson_slice(fa, flm, fm, a, mid);
  const double right = simpson_slice(fm, frm, fb, mid, b);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
    return left + right + delta / 15.0;
  return adapt(f, a, mid, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adapt(f, mid, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 double tol) {
  if (!(b >= a)) throw std::invalid_argument("integrate: need b >= a");
  if (!(tol > 0.0)) throw std::invalid_argument("integrate: need tol > 0");
  if (a == b) return 0.0;
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(0.5 * (a + b));
  return adapt(f, a, b, fa, fm, fb, simpson_slice(fa, fm, fb, a, b), tol, 48);
}

int minimax_elimination_degree(const BipartiteGraph& graph) {
  const int m = graph.m();
  const int n = graph.n();
  if (n > 16)
    throw std::length_error("minimax_elimination_degree: n > 16");
  if (m > 31) throw std::length_error("minimax_elimination_degree: m > 31");

  std::vector<uint32_t> nb(n, 0);
  for (int v = 0; v < n; ++v)
    for (int u = 0; u < m; ++u)
      if (graph.has_edge(u, v)) nb[v] |= uint32_t{1} << u;

  const uint32_t full = (n == 32 ? ~uint32_t{0} : (uint32_t{1} << n) - 1);
  std::vector<int8_t> memo(size_t{1} << n, -1);

  // value(removed) = best achievable max residual degree on the rest.
  auto value = [&](auto&& self, uint32_t removed) -> int {
    if (removed == full) return 0;
    int8_t& slot = memo[removed];
    if (slot >= 0) return slot;
    uint32_t covered = 0;
    for (int v = 0; v < n; ++v)
      if (removed & (uint32_t{1} << v)) covered |= nb[v];
    int best = 127;
    for (int v = 0; v < n; ++v) {
      const uint32_t bit = uint32_t{1} << v;
      if (removed & bit) continue;
      const int deg = __builtin_popcount(nb[v] & ~covered);
      const int rest = self(self, removed | bit);
      best = std::min(best, std::max(deg, rest));
    }
    slot = static_cast<int8_t>(best);
    return best;
  };
  return value(value, 0);
}

namespace {

std::string describe(double got, double want) {
  std::ostringstream out;
  out.precision(16);
  out << "got " << got << ", want " << want;
  return out.str();
}

bool close_rel(double got, double want, double tol) {
  return std::abs(got - want) <= tol * std::max(1.0, std::abs(want));
}

void check_coefficient_routes(std::vector<OracleCheck>& out) {
  double worst = 0.0;
  for (int m = 1; m <= 12; ++m) {
    const std::vector<double> solved = edge_loss_hitting_times(m, 1.0);
    for (int d = 1; d <= m; ++d) {
      const double closed = disconnection_coefficient_sum(m, d);
      const double recursive = disconnection_coefficient(m, d);
      worst = std::max(worst, std::abs(closed - recursive) / closed);
      worst = std::max(worst, std::abs(solved[d - 1] - closed) / closed);
    }
  }
  out.push_back({"coefficient-three-routes", worst <= 1e-12,
                 "max relative spread " + std::to_string(worst)});
}

void check_phase_type_mean(std::vector<OracleCheck>& out) {
  bool pass = true;
  std::string detail = "all pairs agree";
  const int cases[][2] = {{2, 1}, {3, 2}, {5, 3}, {8, 8}, {12, 5}};
  for (const auto& c : cases) {
    const int m = c[0];
    const int d = c[1];
    const double lambda = 0.7;
    const PhaseTypeDist dist(m, d, lambda);
    const double want = mean_disconnection_time(m, d, 1.0 / lambda);
    if (!close_rel(dist.mean(), want, 1e-10)) {
      pass = false;
      detail = "m=" + std::to_string(m) + " d=" + std::to_string(d) + ": " +
               describe(dist.mean(), want);
      break;
    }
  }
  out.push_back({"phase-type-mean-vs-recursion", pass, detail});
}

double tail_horizon(const PhaseTypeDist& dist) {
  double T = dist.mean();
  while (dist.survival(T) > 1e-12 && dist.well_conditioned(2.0 * T)) T *= 2.0;
  return T;
}

void check_density_quadrature(std::vector<OracleCheck>& out) {
  const PhaseTypeDist dist(4, 2, 1.0);
  const double T = tail_horizon(dist);

  const double mass = integrate([&](double x) { return dist.density(x); }, 0.0, T,
                                1e-10);
  const double want_mass = 1.0 - dist.survival(T);
  out.push_back({"density-integrates-to-cdf", close_rel(mass, want_mass, 1e-7),
                 describe(mass, want_mass)});

  const double first_moment =
      integrate([&](double x) { return x * dist.density(x); }, 0.0, T, 1e-10);
  const double want_mean = dist.mean();
  out.push_back({"density-first-moment-vs-mean",
                 close_rel(first_moment, want_mean, 1e-6),
                 describe(first_moment, want_mean)});

  const double half = integrate([&](double x) { return dist.density(x); }, 0.0,
                                0.5 * want_mean, 1e-10);
  const double want_half = 1.0 - dist.survival(0.5 * want_mean);
  out.push_back({"density-partial-mass", close_rel(half, want_half, 1e-7),
                 describe(half, want_half)});
}

void check_quadrature_exactness(std::vector<OracleCheck>& out) {
  // Simpson is exact on cubics; adaptivity must not break that.
  const double got =
      integrate([](double x) { return x * x * x; }, 0.0, 2.0, 1e-12);
  out.push_back(
      {"quadrature-cubic-exact", std::abs(got - 4.0) <= 1e-12, describe(got, 4.0)});
}

void check_path_probabilities(std::vector<OracleCheck>& out) {
  bool pass = true;
  std::string detail = "exact sum 1 on every graph";
  const BipartiteGraph graphs[] = {
      BipartiteGraph::complete(3, 3),
      BipartiteGraph::random(4, 4, 0.55, 11),
      BipartiteGraph::random(5, 3, 0.5, 12),
      BipartiteGraph::random(6, 4, 0.35, 13),
  };
  for (const BipartiteGraph& graph : graphs) {
    const PathEnsemble ensemble = enumerate_paths(graph);
    // Exact rational sum of prod 1/tie_count over all paths. Tie counts
    // are at most n, so reduced denominators stay far below 2^64.
    uint64_t num = 0;
    uint64_t den = 1;
    for (const ActivationPath& path : ensemble.paths) {
      const uint64_t g = std::gcd(den, path.prob_den);
      const uint64_t common = den / g * path.prob_den;
      num = num * (common / den) + path.prob_num * (common / path.prob_den);
      den = common;
      const uint64_t reduce = std::gcd(num, den);
      num /= reduce;
      den /= reduce;
    }
    if (num != den) {
      pass = false;
      detail = "graph m=" + std::to_string(graph.m()) +
               " n=" + std::to_string(graph.n()) + ": probability sum != 1";
      break;
    }
  }
  out.push_back({"path-probability-sum", pass, detail});
}

void check_minimax_degree(std::vector<OracleCheck>& out) {
  bool pass = true;
  std::string detail = "greedy d* matches exhaustive minimax";
  const BipartiteGraph graphs[] = {
      BipartiteGraph::complete(2, 2),
      BipartiteGraph::complete(4, 3),
      BipartiteGraph::random(5, 5, 0.4, 21),
      BipartiteGraph::random(6, 5, 0.6, 22),
      BipartiteGraph::random(7, 6, 0.3, 23),
      BipartiteGraph::random(4, 6, 0.5, 24),
  };
  for (const BipartiteGraph& graph : graphs) {
    const PathEnsemble ensemble = enumerate_paths(graph);
    for (const ActivationPath& path : ensemble.paths) {
      if (path.d_star != ensemble.d_star) {
        pass = false;
        detail = "tie-break changed d*";
      }
    }
    const int brute = minimax_elimination_degree(graph);
    if (brute != ensemble.d_star) {
      pass = false;
      detail = "graph m=" + std::to_string(graph.m()) +
               " n=" + std::to_string(graph.n()) + ": greedy " +
               std::to_string(ensemble.d_star) + " vs minimax " +
               std::to_string(brute);
      break;
    }
  }
  out.push_back({"greedy-degree-is-minimax", pass, detail});
}

void check_drain_time(std::vector<OracleCheck>& out) {
  QueueParams queues;
  queues.arrival_rate = 0.5;
  queues.service_rate_u = 1.0;
  queues.service_rate_v = 1.0;
  queues.drain_speed = 1.0;
  queues.gamma_u = 2.0;
  queues.gamma_v = 1.0;
  queues.r = 100.0;
  const double got = expected_drain_time(queues);
  const double want = 2.0 * 100.0 / (1.0 - 0.5);
  out.push_back({"drain-time-closed-form", std::abs(got - want) <= 1e-12 * want,
                 describe(got, want)});
}

}  // namespace

std::vector<OracleCheck> run_oracle_checks() {
  std::vector<OracleCheck> out;
  check_coefficient_routes(out);
  check_phase_type_mean(out);
  check_density_quadrature(out);
  check_quadrature_exactness(out);
  check_path_probabilities(out);
  check_minimax_degree(out);
  check_drain_time(out);
  return out;
}

}  // namespace radyn
