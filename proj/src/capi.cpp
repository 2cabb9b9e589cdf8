#include "radyn.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "radyn/disconnection.hpp"
#include "radyn/engine.hpp"
#include "radyn/experiment.hpp"
#include "radyn/oracles.hpp"

struct radyn_graph {
  radyn::BipartiteGraph graph;
};

struct radyn_config {
  radyn::ExperimentConfig config;
};

struct radyn_pht {
  radyn::PhaseTypeDist dist;
};

namespace {

thread_local std::string t_last_error = "no error";

radyn_status fail(radyn_status status, const std::string& message) {
  t_last_error = message;
  return status;
}

// Runs `body`, translating exceptions into status codes.
template <typename Body>
radyn_status guarded(Body&& body) {
  try {
    return body();
  } catch (const radyn::TimeoutSaturation& e) {
    return fail(RADYN_ERR_TIMEOUT, e.what());
  } catch (const radyn::SimulationDeadlock& e) {
    return fail(RADYN_ERR_DOMAIN, e.what());
  } catch (const std::domain_error& e) {
    return fail(RADYN_ERR_DOMAIN, e.what());
  } catch (const std::length_error& e) {
    return fail(RADYN_ERR_CAPACITY, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(RADYN_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::bad_alloc&) {
    return fail(RADYN_ERR_CAPACITY, "out of memory");
  } catch (const std::exception& e) {
    return fail(RADYN_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(RADYN_ERR_INTERNAL, "unknown error");
  }
}

char* dup_string(const std::string& text) {
  char* out = static_cast<char*>(std::malloc(text.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, text.c_str(), text.size() + 1);
  return out;
}

radyn_status require(bool ok, const char* message) {
  return ok ? RADYN_OK : fail(RADYN_ERR_INVALID_ARGUMENT, message);
}

nlohmann::json paths_json(const radyn::PathEnsemble& ensemble) {
  nlohmann::json paths = nlohmann::json::array();
  for (const radyn::ActivationPath& path : ensemble.paths) {
    nlohmann::json steps = nlohmann::json::array();
    for (const radyn::AlgorithmStep& step : path.steps) {
      steps.push_back({{"chosen_v", step.chosen_v},
                       {"residual_degree", step.residual_degree},
                       {"tie_count", step.tie_count},
                       {"removed_u", step.removed_u}});
    }
    paths.push_back({{"steps", steps},
                     {"d_star", path.d_star},
                     {"prob_num", path.prob_num},
                     {"prob_den", path.prob_den},
                     {"probability", path.probability()},
                     {"order", path.order()}});
  }
  return nlohmann::json{{"d_star", ensemble.d_star},
                        {"path_count", ensemble.paths.size()},
                        {"paths", paths}};
}

}  // namespace

extern "C" {

const char* radyn_version(void) { return "1.0.0"; }

const char* radyn_rng_algorithm(void) { return radyn::Rng::kAlgorithm; }

const char* radyn_last_error(void) { return t_last_error.c_str(); }

void radyn_string_free(char* text) { std::free(text); }

radyn_status radyn_graph_from_json(const char* json_text, radyn_graph** out_graph) {
  if (radyn_status s = require(json_text && out_graph, "null argument"); s) return s;
  return guarded([&] {
    *out_graph = new radyn_graph{radyn::BipartiteGraph::from_json_text(json_text)};
    return RADYN_OK;
  });
}

radyn_status radyn_graph_complete(int m, int n, radyn_graph** out_graph) {
  if (radyn_status s = require(out_graph != nullptr, "null argument"); s) return s;
  return guarded([&] {
    *out_graph = new radyn_graph{radyn::BipartiteGraph::complete(m, n)};
    return RADYN_OK;
  });
}

radyn_status radyn_graph_random(int m, int n, double p, uint64_t seed,
                                radyn_graph** out_graph) {
  if (radyn_status s = require(out_graph != nullptr, "null argument"); s) return s;
  return guarded([&] {
    *out_graph = new radyn_graph{radyn::BipartiteGraph::random(m, n, p, seed)};
    return RADYN_OK;
  });
}

radyn_status radyn_graph_to_json(const radyn_graph* graph, char** out_json_text) {
  if (radyn_status s = require(graph && out_json_text, "null argument"); s) return s;
  return guarded([&] {
    *out_json_text = dup_string(graph->graph.to_json_text());
    return RADYN_OK;
  });
}

void radyn_graph_free(radyn_graph* graph) { delete graph; }

radyn_status radyn_config_from_json(const char* json_text, radyn_config** out_config) {
  if (radyn_status s = require(json_text && out_config, "null argument"); s) return s;
  return guarded([&]() -> radyn_status {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
      return fail(RADYN_ERR_CONFIG, std::string("config is not valid JSON: ") +
                                        e.what());
    }
    try {
      *out_config = new radyn_config{radyn::ExperimentConfig::from_json(j)};
    } catch (const std::invalid_argument& e) {
      return fail(RADYN_ERR_CONFIG, e.what());
    }
    return RADYN_OK;
  });
}

radyn_status radyn_config_from_file(const char* path, radyn_config** out_config) {
  if (radyn_status s = require(path && out_config, "null argument"); s) return s;
  return guarded([&]() -> radyn_status {
    try {
      *out_config = new radyn_config{radyn::ExperimentConfig::from_file(path)};
    } catch (const std::invalid_argument& e) {
      const bool unreadable =
          std::string(e.what()).find("cannot open") != std::string::npos;
      return fail(unreadable ? RADYN_ERR_IO : RADYN_ERR_CONFIG, e.what());
    }
    return RADYN_OK;
  });
}

void radyn_config_free(radyn_config* config) { delete config; }

radyn_status radyn_run_transition(const radyn_config* config, double r,
                                  uint64_t seed, char** out_record_json) {
  if (radyn_status s = require(config && out_record_json, "null argument"); s)
    return s;
  return guarded([&] {
    radyn::ModelParams params = config->config.params;
    params.queues.r = r;
    const radyn::TransitionRecord record =
        radyn::run_transition(config->config.graph, params, seed);
    *out_record_json = dup_string(record.to_json().dump());
    return RADYN_OK;
  });
}

radyn_status radyn_run_sweep(const radyn_config* config, int workers,
                             const char* output_dir, char** out_report_json) {
  if (radyn_status s = require(config && out_report_json, "null argument"); s)
    return s;
  return guarded([&]() -> radyn_status {
    const radyn::SweepResult sweep = radyn::run_sweep(config->config, workers);
    const std::string dir =
        output_dir != nullptr ? output_dir : config->config.output_dir;
    if (!dir.empty()) {
      try {
        radyn::write_outputs(sweep, dir);
      } catch (const std::runtime_error& e) {
        return fail(RADYN_ERR_IO, e.what());
      }
    }
    *out_report_json = dup_string(radyn::build_report(sweep).dump());
    return RADYN_OK;
  });
}

radyn_status radyn_validate(const radyn_config* config, int workers,
                            const char* output_dir, int* out_ok,
                            char** out_report_json) {
  if (radyn_status s = require(config && out_ok && out_report_json, "null argument");
      s)
    return s;
  return guarded([&]() -> radyn_status {
    const radyn::SweepResult sweep = radyn::run_sweep(config->config, workers);
    radyn::TheoryComparison comparison;
    try {
      comparison = radyn::compare_theory(sweep);
    } catch (const std::invalid_argument& e) {
      return fail(RADYN_ERR_DOMAIN, e.what());
    }
    const std::string dir =
        output_dir != nullptr ? output_dir : config->config.output_dir;
    if (!dir.empty()) {
      try {
        radyn::write_outputs(sweep, dir);
      } catch (const std::runtime_error& e) {
        return fail(RADYN_ERR_IO, e.what());
      }
    }
    *out_ok = comparison.ok ? 1 : 0;
    *out_report_json = dup_string(radyn::build_report(sweep).dump());
    return RADYN_OK;
  });
}

radyn_status radyn_enumerate_paths(const radyn_graph* graph, char** out_json_text) {
  if (radyn_status s = require(graph && out_json_text, "null argument"); s) return s;
  return guarded([&] {
    const radyn::PathEnsemble ensemble = radyn::enumerate_paths(graph->graph);
    *out_json_text = dup_string(paths_json(ensemble).dump());
    return RADYN_OK;
  });
}

radyn_status radyn_path_report(const radyn_graph* graph, double beta,
                               char** out_json_text) {
  if (radyn_status s = require(graph && out_json_text, "null argument"); s) return s;
  return guarded([&] {
    const radyn::PathEnsemble ensemble = radyn::enumerate_paths(graph->graph);
    const radyn::QueueParams queues;  // unit scale, stated in the header
    const radyn::RegimePrediction prediction =
        radyn::predict_fixed_arbitrary(ensemble, beta, queues);
    nlohmann::json report = paths_json(ensemble);
    report["beta"] = beta;
    report["regime"] = radyn::regime_name(prediction.regime);
    report["prediction"] = {{"prefactor", prediction.prefactor},
                            {"exponent", prediction.exponent},
                            {"uses_drain_time", prediction.uses_drain_time},
                            {"order_only", prediction.order_only},
                            {"source", prediction.source}};
    *out_json_text = dup_string(report.dump());
    return RADYN_OK;
  });
}

radyn_status radyn_disconnection_coefficient(int m, int d, double* out_value) {
  if (radyn_status s = require(out_value != nullptr, "null argument"); s) return s;
  return guarded([&] {
    *out_value = radyn::disconnection_coefficient(m, d);
    return RADYN_OK;
  });
}

radyn_status radyn_pht_create(int m, int d, double lambda, radyn_pht** out_dist) {
  if (radyn_status s = require(out_dist != nullptr, "null argument"); s) return s;
  return guarded([&] {
    *out_dist = new radyn_pht{radyn::PhaseTypeDist(m, d, lambda)};
    return RADYN_OK;
  });
}

radyn_status radyn_pht_survival(const radyn_pht* dist, double x, double* out_value) {
  if (radyn_status s = require(dist && out_value, "null argument"); s) return s;
  return guarded([&] {
    *out_value = dist->dist.survival(x);
    return RADYN_OK;
  });
}

radyn_status radyn_pht_density(const radyn_pht* dist, double x, double* out_value) {
  if (radyn_status s = require(dist && out_value, "null argument"); s) return s;
  return guarded([&] {
    *out_value = dist->dist.density(x);
    return RADYN_OK;
  });
}

radyn_status radyn_pht_mean(const radyn_pht* dist, double* out_value) {
  if (radyn_status s = require(dist && out_value, "null argument"); s) return s;
  return guarded([&] {
    *out_value = dist->dist.mean();
    return RADYN_OK;
  });
}

void radyn_pht_free(radyn_pht* dist) { delete dist; }

radyn_status radyn_concentration(int m, int d, double mu, double scale_ratio,
                                 double* out_below, double* out_above) {
  if (radyn_status s = require(out_below && out_above, "null argument"); s) return s;
  return guarded([&] {
    const auto [below, above] = radyn::concentration_check(m, d, mu, scale_ratio);
    *out_below = below;
    *out_above = above;
    return RADYN_OK;
  });
}

radyn_status radyn_oracle_checks(char** out_json_text, int* out_failures) {
  if (radyn_status s = require(out_json_text && out_failures, "null argument"); s)
    return s;
  return guarded([&] {
    const std::vector<radyn::OracleCheck> checks = radyn::run_oracle_checks();
    nlohmann::json list = nlohmann::json::array();
    int failures = 0;
    for (const radyn::OracleCheck& check : checks) {
      if (!check.pass) ++failures;
      list.push_back(
          {{"name", check.name}, {"pass", check.pass}, {"detail", check.detail}});
    }
    *out_json_text = dup_string(list.dump());
    *out_failures = failures;
    return RADYN_OK;
  });
}

}  // extern "C"
