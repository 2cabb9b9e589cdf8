#include "radyn/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace radyn {

namespace {

void expect_object(const nlohmann::json& j, const std::string& where) {
  if (!j.is_object())
    throw std::invalid_argument("config: " + where + " must be an object");
}

void reject_unknown(const nlohmann::json& j, const std::string& where,
                    std::initializer_list<const char*> allowed) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool known = false;
    for (const char* key : allowed)
      if (it.key() == key) {
        known = true;
        break;
      }
    if (!known)
      throw std::invalid_argument("config: unknown key '" + it.key() + "' in " +
                                  where);
  }
}

const nlohmann::json& require_key(const nlohmann::json& j, const std::string& where,
                                  const char* key) {
  auto it = j.find(key);
  if (it == j.end())
    throw std::invalid_argument("config: missing key '" + std::string(key) +
                                "' in " + where);
  return *it;
}

double as_number(const nlohmann::json& j, const std::string& where) {
  if (!j.is_number())
    throw std::invalid_argument("config: " + where + " must be a number");
  return j.get<double>();
}

double number_or(const nlohmann::json& j, const std::string& where, const char* key,
                 double fallback) {
  auto it = j.find(key);
  return it == j.end() ? fallback : as_number(*it, where + "." + key);
}

uint64_t as_uint(const nlohmann::json& j, const std::string& where) {
  if (!(j.is_number_unsigned() || (j.is_number_integer() && j.get<int64_t>() >= 0)))
    throw std::invalid_argument("config: " + where +
                                " must be a non-negative integer");
  return j.get<uint64_t>();
}

bool as_bool(const nlohmann::json& j, const std::string& where) {
  if (!j.is_boolean())
    throw std::invalid_argument("config: " + where + " must be a boolean");
  return j.get<bool>();
}

RateFunctions parse_rates(const nlohmann::json& j) {
  expect_object(j, "rates");
  reject_unknown(j, "rates", {"mode", "B", "beta", "B_prime", "beta_prime"});
  RateFunctions rates;
  if (auto it = j.find("mode"); it != j.end()) {
    if (!it->is_string())
      throw std::invalid_argument("config: rates.mode must be a string");
    const std::string mode = it->get<std::string>();
    if (mode == "fixed")
      rates.mode = RateMode::Fixed;
    else if (mode == "queue_based")
      rates.mode = RateMode::QueueBased;
    else
      throw std::invalid_argument(
          "config: rates.mode must be 'fixed' or 'queue_based', got '" + mode + "'");
  }
  rates.B = number_or(j, "rates", "B", rates.B);
  rates.beta = number_or(j, "rates", "beta", rates.beta);
  rates.B_prime = number_or(j, "rates", "B_prime", rates.B_prime);
  rates.beta_prime = number_or(j, "rates", "beta_prime", rates.beta_prime);
  return rates;
}

QueueParams parse_queues(const nlohmann::json& j) {
  expect_object(j, "queues");
  reject_unknown(j, "queues",
                 {"arrival_rate", "service_rate_u", "service_rate_v", "drain_speed",
                  "gamma_u", "gamma_v"});
  QueueParams queues;
  queues.arrival_rate = number_or(j, "queues", "arrival_rate", queues.arrival_rate);
  queues.service_rate_u =
      number_or(j, "queues", "service_rate_u", queues.service_rate_u);
  queues.service_rate_v =
      number_or(j, "queues", "service_rate_v", queues.service_rate_v);
  queues.drain_speed = number_or(j, "queues", "drain_speed", queues.drain_speed);
  queues.gamma_u = number_or(j, "queues", "gamma_u", queues.gamma_u);
  queues.gamma_v = number_or(j, "queues", "gamma_v", queues.gamma_v);
  return queues;
}

DynamicsSpec parse_dynamics(const nlohmann::json& j) {
  expect_object(j, "dynamics");
  reject_unknown(j, "dynamics", {"kind", "value"});
  const nlohmann::json& kind_json = require_key(j, "dynamics", "kind");
  if (!kind_json.is_string())
    throw std::invalid_argument("config: dynamics.kind must be a string");
  const std::string kind = kind_json.get<std::string>();
  DynamicsSpec dynamics;
  if (kind == "static")
    dynamics.kind = DynamicsKind::Static;
  else if (kind == "fast")
    dynamics.kind = DynamicsKind::Fast;
  else if (kind == "regular")
    dynamics.kind = DynamicsKind::Regular;
  else if (kind == "slow")
    dynamics.kind = DynamicsKind::Slow;
  else
    throw std::invalid_argument(
        "config: dynamics.kind must be one of static/fast/regular/slow, got '" +
        kind + "'");
  if (dynamics.kind != DynamicsKind::Static) {
    dynamics.value = as_number(require_key(j, "dynamics", "value"), "dynamics.value");
  } else {
    dynamics.value = number_or(j, "dynamics", "value", dynamics.value);
  }
  return dynamics;
}

const char* rate_mode_name(RateMode mode) {
  return mode == RateMode::Fixed ? "fixed" : "queue_based";
}

double point_mean(const std::vector<double>& values) {
  double sum = 0.0;
  for (double v : values) sum += v;
  return sum / static_cast<double>(values.size());
}

// OLS slope/intercept of ys on xs.
void least_squares(const std::vector<double>& xs, const std::vector<double>& ys,
                   double& slope, double& intercept) {
  const auto count = static_cast<double>(xs.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  const double denom = count * sxx - sx * sx;
  if (denom == 0.0)
    throw std::invalid_argument("exponent fit needs distinct r values");
  slope = (count * sxy - sx * sy) / denom;
  intercept = (sy - slope * sx) / count;
}

}  // namespace

void ToleranceSpec::validate() const {
  if (!(exponent_margin > 0.0))
    throw std::invalid_argument("tolerances.exponent_margin must be positive");
  if (!(ratio_band >= 1.0))
    throw std::invalid_argument("tolerances.ratio_band must be >= 1");
}

void ExperimentConfig::validate() const {
  params.validate();
  tolerances.validate();
  if (r_grid.empty()) throw std::invalid_argument("config: r_grid must be non-empty");
  for (double r : r_grid)
    if (!(r > 0.0)) throw std::invalid_argument("config: every r must be positive");
  for (size_t i = 1; i < r_grid.size(); ++i)
    if (!(r_grid[i] > r_grid[i - 1]))
      throw std::invalid_argument("config: r_grid must be strictly increasing");
  if (replications < 1)
    throw std::invalid_argument("config: replications must be >= 1");
}

ExperimentConfig ExperimentConfig::from_json(const nlohmann::json& j) {
  expect_object(j, "top level");
  reject_unknown(j, "top level",
                 {"graph", "rates", "queues", "dynamics", "r_grid", "replications",
                  "seed", "deactivate_on_empty", "event_cap", "tolerances",
                  "output"});
  ExperimentConfig config;
  config.graph =
      BipartiteGraph::from_json_text(require_key(j, "top level", "graph").dump());
  config.params.rates = parse_rates(require_key(j, "top level", "rates"));
  config.params.queues = parse_queues(require_key(j, "top level", "queues"));
  config.params.dynamics = parse_dynamics(require_key(j, "top level", "dynamics"));

  const nlohmann::json& grid = require_key(j, "top level", "r_grid");
  if (!grid.is_array())
    throw std::invalid_argument("config: r_grid must be an array");
  for (const auto& entry : grid)
    config.r_grid.push_back(as_number(entry, "r_grid entry"));

  const nlohmann::json& reps = require_key(j, "top level", "replications");
  config.replications = static_cast<int>(as_uint(reps, "replications"));
  config.seed = as_uint(require_key(j, "top level", "seed"), "seed");

  if (auto it = j.find("deactivate_on_empty"); it != j.end())
    config.params.deactivate_on_empty = as_bool(*it, "deactivate_on_empty");
  if (auto it = j.find("event_cap"); it != j.end())
    config.params.event_cap = as_uint(*it, "event_cap");
  if (auto it = j.find("tolerances"); it != j.end()) {
    expect_object(*it, "tolerances");
    reject_unknown(*it, "tolerances", {"exponent_margin", "ratio_band"});
    config.tolerances.exponent_margin = number_or(
        *it, "tolerances", "exponent_margin", config.tolerances.exponent_margin);
    config.tolerances.ratio_band =
        number_or(*it, "tolerances", "ratio_band", config.tolerances.ratio_band);
  }
  if (auto it = j.find("output"); it != j.end()) {
    if (!it->is_string())
      throw std::invalid_argument("config: output must be a string");
    config.output_dir = it->get<std::string>();
  }

  if (!config.r_grid.empty()) config.params.queues.r = config.r_grid.front();
  config.validate();
  return config;
}

ExperimentConfig ExperimentConfig::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("config: cannot open " + path);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument("config: " + path + " is not valid JSON: " +
                                e.what());
  }
  return from_json(j);
}

nlohmann::json ExperimentConfig::to_json() const {
  nlohmann::json j;
  j["graph"] = nlohmann::json::parse(graph.to_json_text());
  j["rates"] = {{"mode", rate_mode_name(params.rates.mode)},
                {"B", params.rates.B},
                {"beta", params.rates.beta},
                {"B_prime", params.rates.B_prime},
                {"beta_prime", params.rates.beta_prime}};
  j["queues"] = {{"arrival_rate", params.queues.arrival_rate},
                 {"service_rate_u", params.queues.service_rate_u},
                 {"service_rate_v", params.queues.service_rate_v},
                 {"drain_speed", params.queues.drain_speed},
                 {"gamma_u", params.queues.gamma_u},
                 {"gamma_v", params.queues.gamma_v}};
  j["dynamics"] = {{"kind", dynamics_kind_name(params.dynamics.kind)},
                   {"value", params.dynamics.value}};
  j["r_grid"] = r_grid;
  j["replications"] = replications;
  j["seed"] = seed;
  j["deactivate_on_empty"] = params.deactivate_on_empty;
  j["event_cap"] = params.event_cap;
  j["tolerances"] = {{"exponent_margin", tolerances.exponent_margin},
                     {"ratio_band", tolerances.ratio_band}};
  if (!output_dir.empty()) j["output"] = output_dir;
  return j;
}

SweepResult run_sweep(const ExperimentConfig& config, int workers) {
  config.validate();
  if (workers < 1) throw std::invalid_argument("workers must be >= 1");

  SweepResult out;
  out.config = config;
  const int points = static_cast<int>(config.r_grid.size());
  const int reps = config.replications;
  const int total = points * reps;
  out.replications.resize(total);

  std::atomic<int> cursor{0};
  std::mutex error_mutex;
  std::exception_ptr error;

  auto worker = [&] {
    for (;;) {
      const int task = cursor.fetch_add(1);
      if (task >= total) return;
      const int r_index = task / reps;
      const int rep = task % reps;
      try {
        ModelParams params = config.params;
        params.queues.r = config.r_grid[r_index];
        const uint64_t seed = Rng::derive(config.seed, r_index, rep);
        TransitionEngine engine(config.graph, params, seed);
        ReplicationResult& slot = out.replications[task];
        slot.r_index = r_index;
        slot.replication = rep;
        slot.record = engine.run_to_transition();
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        return;
      }
    }
  };

  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int i = 0; i < workers; ++i) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }
  if (error) std::rethrow_exception(error);

  out.summaries.resize(points);
  for (int p = 0; p < points; ++p) {
    GridSummary& s = out.summaries[p];
    s.r = config.r_grid[p];
    s.replications = reps;
    double sum = 0.0, sumsq = 0.0, sumlog = 0.0;
    int done = 0;
    for (int rep = 0; rep < reps; ++rep) {
      const TransitionRecord& rec = out.replications[p * reps + rep].record;
      if (rec.timed_out) {
        ++s.timeouts;
        continue;
      }
      ++done;
      sum += rec.transition_time;
      sumsq += rec.transition_time * rec.transition_time;
      sumlog += std::log(rec.transition_time);
      const int cause = rec.first_cause();
      if (cause == static_cast<int>(Cause::Nucleation)) ++s.first_nucleation;
      if (cause == static_cast<int>(Cause::Disconnection)) ++s.first_disconnection;
    }
    if (done > 0) {
      s.mean_time = sum / done;
      s.mean_log_time = sumlog / done;
      if (done > 1) {
        const double var =
            std::max(0.0, (sumsq - done * s.mean_time * s.mean_time) / (done - 1));
        s.stddev_time = std::sqrt(var);
      }
    }
    if (s.timeouts == s.replications)
      throw TimeoutSaturation("every replication hit the event cap at r = " +
                              format_double(s.r));
  }
  return out;
}

ExponentFit fit_exponent(const SweepResult& sweep, int bootstrap) {
  const int reps = sweep.config.replications;
  std::vector<double> log_r;
  std::vector<std::vector<double>> times;
  for (size_t p = 0; p < sweep.config.r_grid.size(); ++p) {
    std::vector<double> point;
    for (int rep = 0; rep < reps; ++rep) {
      const TransitionRecord& rec =
          sweep.replications[p * reps + rep].record;
      if (!rec.timed_out) point.push_back(rec.transition_time);
    }
    if (point.empty()) continue;  // grid point lost to timeouts
    log_r.push_back(std::log(sweep.config.r_grid[p]));
    times.push_back(std::move(point));
  }
  if (log_r.size() < 3)
    throw std::invalid_argument("exponent fit needs at least three usable grid points");

  ExponentFit fit;
  fit.points = static_cast<int>(log_r.size());
  std::vector<double> log_mean(log_r.size());
  for (size_t p = 0; p < times.size(); ++p) {
    const double mean = point_mean(times[p]);
    if (!(mean > 0.0))
      throw std::invalid_argument("exponent fit needs positive mean times");
    log_mean[p] = std::log(mean);
  }
  least_squares(log_r, log_mean, fit.slope, fit.intercept);

  if (bootstrap <= 0) {
    fit.ci_low = fit.slope;
    fit.ci_high = fit.slope;
    return fit;
  }
  // Stream disjoint from every replication: grid indexes are small ints.
  Rng rng = Rng::for_replication(sweep.config.seed, 0xB0075ull, 0xB0075ull);
  std::vector<double> slopes(bootstrap);
  std::vector<double> resampled(log_r.size());
  for (int b = 0; b < bootstrap; ++b) {
    for (size_t p = 0; p < times.size(); ++p) {
      const std::vector<double>& pool = times[p];
      double sum = 0.0;
      for (size_t i = 0; i < pool.size(); ++i)
        sum += pool[rng.uniform_index(pool.size())];
      resampled[p] = std::log(sum / static_cast<double>(pool.size()));
    }
    double slope = 0.0, intercept = 0.0;
    least_squares(log_r, resampled, slope, intercept);
    slopes[b] = slope;
  }
  std::sort(slopes.begin(), slopes.end());
  const auto lo_idx = static_cast<size_t>(
      std::floor(0.025 * static_cast<double>(bootstrap - 1)));
  const auto hi_idx = static_cast<size_t>(
      std::ceil(0.975 * static_cast<double>(bootstrap - 1)));
  fit.ci_low = slopes[lo_idx];
  fit.ci_high = slopes[hi_idx];
  return fit;
}

nlohmann::json TheoryComparison::to_json() const {
  return nlohmann::json{
      {"prediction",
       {{"regime", regime_name(prediction.regime)},
        {"prefactor", prediction.prefactor},
        {"exponent", prediction.exponent},
        {"uses_drain_time", prediction.uses_drain_time},
        {"order_only", prediction.order_only},
        {"source", prediction.source}}},
      {"fit",
       {{"slope", fit.slope},
        {"intercept", fit.intercept},
        {"ci_low", fit.ci_low},
        {"ci_high", fit.ci_high},
        {"points", fit.points}}},
      {"mean_at_rmax", mean_at_rmax},
      {"predicted_at_rmax", predicted_at_rmax},
      {"ratio", ratio},
      {"ratio_drift", ratio_drift},
      {"exponent_ok", exponent_ok},
      {"ratio_ok", ratio_ok},
      {"ok", ok}};
}

namespace {

// Static prediction with the complete-graph shortcut (d* = m there, and
// the closed formula applies without enumerating n! orders).
RegimePrediction predict_static(const ExperimentConfig& config) {
  const double beta = config.params.rates.beta;
  if (config.graph.is_complete())
    return predict_fixed_complete(config.graph.m(), beta, config.params.queues);
  return predict_fixed_arbitrary(enumerate_paths(config.graph), beta,
                                 config.params.queues);
}

}  // namespace

TheoryComparison compare_theory(const SweepResult& sweep) {
  const ExperimentConfig& config = sweep.config;
  const double beta = config.params.rates.beta;
  const DynamicsSpec& dynamics = config.params.dynamics;

  RegimePrediction prediction;
  if (dynamics.kind == DynamicsKind::Static) {
    prediction = predict_static(config);
  } else if (dynamics.kind == DynamicsKind::Slow) {
    const int d_star = config.graph.is_complete()
                           ? config.graph.m()
                           : enumerate_paths(config.graph).d_star;
    const double nucleation_scale = d_star > 1 ? beta * (d_star - 1) : 0.0;
    const double threshold = std::min(1.0, nucleation_scale);
    if (dynamics.value <= threshold && threshold > 0.0) {
      prediction = predict_dynamic(dynamics, d_star, beta, config.params.queues);
    } else {
      // Dynamics too slow to compete: the static law carries over whole,
      // prefactor included.
      prediction = predict_static(config);
    }
  } else {
    const int d_star = config.graph.is_complete()
                           ? config.graph.m()
                           : enumerate_paths(config.graph).d_star;
    prediction =
        predict_dynamic(dynamics, d_star, beta, config.params.queues);
  }

  TheoryComparison cmp;
  cmp.prediction = prediction;
  cmp.fit = fit_exponent(sweep);

  const GridSummary* last = nullptr;
  double ratio_min = std::numeric_limits<double>::infinity();
  double ratio_max = 0.0;
  for (const GridSummary& s : sweep.summaries) {
    if (s.timeouts >= s.replications) continue;
    last = &s;
    const double ratio = s.mean_time / prediction.evaluate(s.r);
    ratio_min = std::min(ratio_min, ratio);
    ratio_max = std::max(ratio_max, ratio);
  }
  if (last == nullptr)
    throw std::invalid_argument("theory comparison: every grid point timed out");
  cmp.mean_at_rmax = last->mean_time;
  cmp.predicted_at_rmax = prediction.evaluate(last->r);
  cmp.ratio = cmp.mean_at_rmax / cmp.predicted_at_rmax;
  cmp.ratio_drift = ratio_max / ratio_min;

  const ToleranceSpec& tol = config.tolerances;
  cmp.exponent_ok =
      std::abs(cmp.fit.slope - prediction.exponent) <= tol.exponent_margin;
  cmp.ratio_ok = prediction.order_only
                     ? cmp.ratio_drift <= tol.ratio_band
                     : (cmp.ratio >= 1.0 / tol.ratio_band &&
                        cmp.ratio <= tol.ratio_band);
  cmp.ok = cmp.exponent_ok && cmp.ratio_ok;
  return cmp;
}

double CauseFractions::first_disconnection_fraction() const {
  const int total = first_nucleation + first_disconnection;
  return total == 0 ? 0.0 : static_cast<double>(first_disconnection) / total;
}

double CauseFractions::pooled_disconnection_fraction() const {
  const int total = pooled_nucleation + pooled_disconnection;
  return total == 0 ? 0.0 : static_cast<double>(pooled_disconnection) / total;
}

CauseFractions cause_fractions(const SweepResult& sweep, int r_index) {
  CauseFractions out;
  for (const ReplicationResult& rr : sweep.replications) {
    if (r_index >= 0 && rr.r_index != r_index) continue;
    const int first = rr.record.first_cause();
    if (first == static_cast<int>(Cause::Nucleation)) ++out.first_nucleation;
    if (first == static_cast<int>(Cause::Disconnection)) ++out.first_disconnection;
    for (const VActivation& a : rr.record.first_activation) {
      if (a.time < 0.0) continue;
      if (a.cause == Cause::Nucleation) ++out.pooled_nucleation;
      if (a.cause == Cause::Disconnection) ++out.pooled_disconnection;
    }
  }
  return out;
}

std::string format_double(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.17g", value);
  return buffer;
}

void write_outputs(const SweepResult& sweep, const std::string& dir) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);

  {
    std::ofstream out(fs::path(dir) / "replications.csv");
    if (!out) throw std::runtime_error("cannot write replications.csv in " + dir);
    out << "r_index,r,replication,seed,transition_time,timed_out,final_clock,"
           "activation_attempts,activations,deactivations,edge_flips,arrivals,"
           "queue_empties,processed_events,first_cause,nucleations,"
           "disconnections\n";
    for (const ReplicationResult& rr : sweep.replications) {
      const TransitionRecord& rec = rr.record;
      const int first = rec.first_cause();
      out << rr.r_index << ',' << format_double(rec.r) << ',' << rr.replication
          << ',' << rec.seed << ',' << format_double(rec.transition_time) << ','
          << (rec.timed_out ? 1 : 0) << ',' << format_double(rec.final_clock)
          << ',' << rec.counts.attempts << ',' << rec.counts.activations << ','
          << rec.counts.deactivations << ',' << rec.counts.edge_flips << ','
          << rec.counts.arrivals << ',' << rec.counts.queue_empties << ','
          << rec.processed_events << ','
          << (first < 0 ? "none" : cause_name(static_cast<Cause>(first))) << ','
          << rec.nucleation_count() << ',' << rec.disconnection_count() << '\n';
    }
  }

  {
    std::ofstream out(fs::path(dir) / "summary.csv");
    if (!out) throw std::runtime_error("cannot write summary.csv in " + dir);
    out << "r_index,r,replications,timeouts,mean_time,stddev_time,mean_log_time,"
           "first_nucleation,first_disconnection\n";
    for (size_t p = 0; p < sweep.summaries.size(); ++p) {
      const GridSummary& s = sweep.summaries[p];
      out << p << ',' << format_double(s.r) << ',' << s.replications << ','
          << s.timeouts << ',' << format_double(s.mean_time) << ','
          << format_double(s.stddev_time) << ','
          << format_double(s.mean_log_time) << ',' << s.first_nucleation << ','
          << s.first_disconnection << '\n';
    }
  }

  {
    std::ofstream out(fs::path(dir) / "report.json");
    if (!out) throw std::runtime_error("cannot write report.json in " + dir);
    out << build_report(sweep).dump(2) << '\n';
  }
}

nlohmann::json build_report(const SweepResult& sweep) {
  nlohmann::json summaries = nlohmann::json::array();
  for (const GridSummary& s : sweep.summaries) {
    summaries.push_back({{"r", s.r},
                         {"replications", s.replications},
                         {"timeouts", s.timeouts},
                         {"mean_time", s.mean_time},
                         {"stddev_time", s.stddev_time},
                         {"mean_log_time", s.mean_log_time},
                         {"first_nucleation", s.first_nucleation},
                         {"first_disconnection", s.first_disconnection}});
  }
  nlohmann::json fit_json;
  nlohmann::json comparison_json;
  try {
    const TheoryComparison comparison = compare_theory(sweep);
    fit_json = {{"slope", comparison.fit.slope},
                {"intercept", comparison.fit.intercept},
                {"ci_low", comparison.fit.ci_low},
                {"ci_high", comparison.fit.ci_high},
                {"points", comparison.fit.points}};
    comparison_json = comparison.to_json();
  } catch (const std::invalid_argument&) {
    // Single-point grids (or sweeps eaten by timeouts) report raw data only.
  } catch (const std::length_error&) {
    // Path enumeration refused the graph; raw data still stands.
  }
  const CauseFractions causes = cause_fractions(sweep);
  return nlohmann::json{
      {"config", sweep.config.to_json()},
      {"rng", Rng::kAlgorithm},
      {"summaries", summaries},
      {"fit", fit_json},
      {"comparison", comparison_json},
      {"cause_fractions",
       {{"first_nucleation", causes.first_nucleation},
        {"first_disconnection", causes.first_disconnection},
        {"first_disconnection_fraction", causes.first_disconnection_fraction()},
        {"pooled_nucleation", causes.pooled_nucleation},
        {"pooled_disconnection", causes.pooled_disconnection},
        {"pooled_disconnection_fraction",
         causes.pooled_disconnection_fraction()}}}};
}

}  // namespace radyn
