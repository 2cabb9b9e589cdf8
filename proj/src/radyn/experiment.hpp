#pragma once

// Sweep driver: load a JSON experiment config, run replications across a
// grid of scale parameters r (optionally on several worker threads), fit
// the log-log growth exponent of the transition time, compare against the
// regime prediction, and emit csv/json outputs. Results are deterministic
// in (config, master seed) and independent of the worker count: every
// replication owns the stream derived from (seed, grid index, index).

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "radyn/activation_order.hpp"
#include "radyn/engine.hpp"

namespace radyn {

struct ToleranceSpec {
  double exponent_margin = 0.1;  // |fitted slope - predicted exponent|
  double ratio_band = 2.0;       // observed/predicted within [1/band, band]

  void validate() const;
};

struct ExperimentConfig {
  BipartiteGraph graph{1, 1};
  ModelParams params;
  std::vector<double> r_grid;
  int replications = 0;
  uint64_t seed = 0;
  ToleranceSpec tolerances;
  std::string output_dir;  // empty: write nothing

  void validate() const;

  // Strict parse: unknown keys anywhere are rejected.
  static ExperimentConfig from_json(const nlohmann::json& j);
  static ExperimentConfig from_file(const std::string& path);
  nlohmann::json to_json() const;
};

struct ReplicationResult {
  int r_index = 0;
  int replication = 0;
  TransitionRecord record;
};

struct GridSummary {
  double r = 0.0;
  int replications = 0;
  int timeouts = 0;
  double mean_time = 0.0;  // completed replications only
  double stddev_time = 0.0;
  double mean_log_time = 0.0;
  int first_nucleation = 0;  // first-activation cause tallies
  int first_disconnection = 0;
};

struct SweepResult {
  ExperimentConfig config;
  std::vector<ReplicationResult> replications;  // r_index * reps + rep
  std::vector<GridSummary> summaries;
};

// A grid point lost every replication to the event cap; scattered
// timeouts are recorded per row instead.
struct TimeoutSaturation : std::runtime_error {
  explicit TimeoutSaturation(const std::string& what) : std::runtime_error(what) {}
};

SweepResult run_sweep(const ExperimentConfig& config, int workers = 1);

struct ExponentFit {
  double slope = 0.0;  // d log E[T] / d log r
  double intercept = 0.0;
  double ci_low = 0.0;  // bootstrap 95% interval for the slope
  double ci_high = 0.0;
  int points = 0;  // grid points entering the fit
};

// OLS of log(mean transition time) on log r over the grid points that
// kept at least one completed replication; needs three such points. The
// interval comes from resampling replications within each grid point.
ExponentFit fit_exponent(const SweepResult& sweep, int bootstrap = 200);

struct TheoryComparison {
  RegimePrediction prediction;
  ExponentFit fit;
  double mean_at_rmax = 0.0;
  double predicted_at_rmax = 0.0;
  double ratio = 0.0;        // observed / predicted at the largest r
  double ratio_drift = 0.0;  // max over grid of that ratio / min of it
  bool exponent_ok = false;
  // Pinned prefactor: ratio at the largest r inside [1/band, band].
  // Order-only prediction: ratio drift across the grid at most band.
  bool ratio_ok = false;
  bool ok = false;

  nlohmann::json to_json() const;
};

// Prediction source: complete-graph formula under static dynamics on a
// complete graph, the activation-path ensemble otherwise, and the
// dynamic-regime rules when edges flip.
TheoryComparison compare_theory(const SweepResult& sweep);

struct CauseFractions {
  int first_nucleation = 0;       // chronologically first activation
  int first_disconnection = 0;
  int pooled_nucleation = 0;      // every first activation of every V node
  int pooled_disconnection = 0;

  double first_disconnection_fraction() const;
  double pooled_disconnection_fraction() const;
};

// Tallies over one grid point, or over the whole sweep for r_index = -1.
CauseFractions cause_fractions(const SweepResult& sweep, int r_index = -1);

// Full report JSON: config echo, per-point summaries, exponent fit and
// theory comparison (both null when fewer than two grid points survive
// timeouts), pooled cause fractions, RNG identity.
nlohmann::json build_report(const SweepResult& sweep);

// replications.csv, summary.csv, report.json under dir.
void write_outputs(const SweepResult& sweep, const std::string& dir);

// Doubles formatted round-trip exact ("%.17g") for csv/json text.
std::string format_double(double value);

}  // namespace radyn
