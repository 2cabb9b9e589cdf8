// Command-line front end. All model work goes through the C API in
// radyn.h; this file only parses arguments, moves JSON text around, and
// picks exit codes: 0 success, 2 usage/config/runtime error, 3 a
// validation or self-check verdict of "fail".

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "radyn.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 2;
constexpr int kExitVerdictFail = 3;

[[nodiscard]] int complain(const std::string& context) {
  std::cerr << "error: " << context << ": " << radyn_last_error() << "\n";
  return kExitError;
}

// Owned C string -> std::string.
std::string take_string(char* text) {
  std::string out = text == nullptr ? "" : text;
  radyn_string_free(text);
  return out;
}

std::string pretty(const std::string& json_text) {
  return nlohmann::json::parse(json_text).dump(2);
}

struct ConfigOptions {
  std::string config_path;
  int workers = 1;
  std::string out_dir;
  bool out_dir_set = false;
  uint64_t seed = 0;
  bool seed_set = false;
};

void add_config_options(CLI::App* cmd, ConfigOptions& opts) {
  cmd->add_option("--config", opts.config_path, "experiment config JSON file")
      ->required();
  cmd->add_option("--workers", opts.workers, "worker threads (default 1)")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--out", opts.out_dir,
                  "output directory (overrides the config's `output`)")
      ->each([&](const std::string&) { opts.out_dir_set = true; });
  cmd->add_option("--seed", opts.seed, "override the config's master seed")
      ->each([&](const std::string&) { opts.seed_set = true; });
}

// Loads the config file, applying the --seed override textually so the
// strict parser stays the single authority on the schema.
int load_config(const ConfigOptions& opts, radyn_config** out) {
  std::ifstream in(opts.config_path);
  if (!in) {
    std::cerr << "error: cannot open " << opts.config_path << "\n";
    return kExitError;
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  std::string text = buffer.str();
  if (opts.seed_set) {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
      std::cerr << "error: " << opts.config_path << " is not valid JSON: "
                << e.what() << "\n";
      return kExitError;
    }
    j["seed"] = opts.seed;
    text = j.dump();
  }
  if (radyn_config_from_json(text.c_str(), out) != RADYN_OK)
    return complain(opts.config_path);
  return kExitOk;
}

int cmd_run(const ConfigOptions& opts) {
  radyn_config* config = nullptr;
  if (int status = load_config(opts, &config); status != kExitOk) return status;
  char* report = nullptr;
  const char* out_dir = opts.out_dir_set ? opts.out_dir.c_str() : nullptr;
  const radyn_status status =
      radyn_run_sweep(config, opts.workers, out_dir, &report);
  radyn_config_free(config);
  if (status == RADYN_ERR_TIMEOUT) {
    // Data failure, not a usage error: some r saturated the event cap.
    std::cerr << "error: sweep failed: " << radyn_last_error() << "\n";
    return kExitVerdictFail;
  }
  if (status != RADYN_OK) return complain("sweep failed");
  std::cout << pretty(take_string(report)) << "\n";
  return kExitOk;
}

struct ValidateOptions {
  std::string config_path;
  uint64_t seed = 0;
  bool seed_set = false;
};

int cmd_validate(const ValidateOptions& opts) {
  ConfigOptions load;
  load.config_path = opts.config_path;
  load.seed = opts.seed;
  load.seed_set = opts.seed_set;
  radyn_config* config = nullptr;
  if (int status = load_config(load, &config); status != kExitOk) return status;
  radyn_config_free(config);
  std::cout << "config OK: " << opts.config_path << "\n";
  return kExitOk;
}

struct PathsOptions {
  std::string graph_path;
  std::vector<int> complete;  // m n
  std::vector<double> random;  // m n p seed
  double beta = 0.5;
  bool csv = false;
};

// Semicolon-joined ints, CSV-safe without quoting.
std::string join_ints(const std::vector<int>& values) {
  std::string out;
  for (size_t i = 0; i < values.size(); ++i) {
    if (i > 0) out += ';';
    out += std::to_string(values[i]);
  }
  return out;
}

void print_paths_csv(const nlohmann::json& report) {
  std::cout << "path,order,degrees,ties,prob_num,prob_den,probability,"
               "d_star,regime,prefactor,exponent,order_only\n";
  const nlohmann::json& prediction = report["prediction"];
  int index = 0;
  for (const auto& path : report["paths"]) {
    std::vector<int> order;
    std::vector<int> degrees;
    std::vector<int> ties;
    for (const auto& step : path["steps"]) {
      order.push_back(step["chosen_v"].get<int>());
      degrees.push_back(step["residual_degree"].get<int>());
      ties.push_back(step["tie_count"].get<int>());
    }
    std::cout << index++ << ',' << join_ints(order) << ',' << join_ints(degrees)
              << ',' << join_ints(ties) << ',' << path["prob_num"].get<uint64_t>()
              << ',' << path["prob_den"].get<uint64_t>() << ','
              << path["probability"].get<double>() << ','
              << report["d_star"].get<int>() << ','
              << report["regime"].get<std::string>() << ','
              << prediction["prefactor"].get<double>() << ','
              << prediction["exponent"].get<double>() << ','
              << (prediction["order_only"].get<bool>() ? 1 : 0) << "\n";
  }
}

int cmd_paths(const PathsOptions& opts) {
  radyn_graph* graph = nullptr;
  if (!opts.graph_path.empty()) {
    std::ifstream in(opts.graph_path);
    if (!in) {
      std::cerr << "error: cannot open " << opts.graph_path << "\n";
      return kExitError;
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    if (radyn_graph_from_json(buffer.str().c_str(), &graph) != RADYN_OK)
      return complain(opts.graph_path);
  } else if (!opts.complete.empty()) {
    if (radyn_graph_complete(opts.complete[0], opts.complete[1], &graph) != RADYN_OK)
      return complain("complete graph");
  } else {
    if (radyn_graph_random(static_cast<int>(opts.random[0]),
                           static_cast<int>(opts.random[1]), opts.random[2],
                           static_cast<uint64_t>(opts.random[3]),
                           &graph) != RADYN_OK)
      return complain("random graph");
  }
  char* text = nullptr;
  const radyn_status status = radyn_path_report(graph, opts.beta, &text);
  radyn_graph_free(graph);
  if (status != RADYN_OK) return complain("path enumeration failed");
  const std::string report = take_string(text);
  if (opts.csv)
    print_paths_csv(nlohmann::json::parse(report));
  else
    std::cout << pretty(report) << "\n";
  return kExitOk;
}

struct PhtOptions {
  int m = 0;
  int d = 0;
  double lambda = 1.0;
  std::vector<double> at;
  std::vector<double> grid;  // start stop count
  double concentration = 0.0;
  bool concentration_set = false;
};

// Evenly spaced (x, survival, density) rows for plotting.
int print_pht_grid(radyn_pht* dist, const PhtOptions& opts) {
  const double start = opts.grid[0];
  const double stop = opts.grid[1];
  const int count = static_cast<int>(opts.grid[2]);
  if (count < 2 || stop <= start || start < 0.0) {
    std::cerr << "error: --grid wants START >= 0, STOP > START, COUNT >= 2\n";
    return kExitError;
  }
  std::cout << "x,survival,density\n";
  for (int i = 0; i < count; ++i) {
    const double x = start + (stop - start) * i / (count - 1);
    double survival = 0.0;
    double density = 0.0;
    if (radyn_pht_survival(dist, x, &survival) != RADYN_OK ||
        radyn_pht_density(dist, x, &density) != RADYN_OK)
      return complain("evaluation");
    std::printf("%.17g,%.17g,%.17g\n", x, survival, density);
  }
  return kExitOk;
}

int cmd_pht(const PhtOptions& opts) {
  radyn_pht* dist = nullptr;
  if (radyn_pht_create(opts.m, opts.d, opts.lambda, &dist) != RADYN_OK)
    return complain("phase-type distribution");
  if (!opts.grid.empty()) {
    const int status = print_pht_grid(dist, opts);
    radyn_pht_free(dist);
    return status;
  }
  nlohmann::json out;
  out["m"] = opts.m;
  out["d"] = opts.d;
  out["lambda"] = opts.lambda;
  double mean = 0.0;
  if (radyn_pht_mean(dist, &mean) != RADYN_OK) {
    radyn_pht_free(dist);
    return complain("mean");
  }
  out["mean"] = mean;
  double coefficient = 0.0;
  if (radyn_disconnection_coefficient(opts.m, opts.d, &coefficient) != RADYN_OK) {
    radyn_pht_free(dist);
    return complain("coefficient");
  }
  out["coefficient"] = coefficient;
  if (!opts.at.empty()) {
    nlohmann::json points = nlohmann::json::array();
    for (double x : opts.at) {
      double survival = 0.0;
      double density = 0.0;
      if (radyn_pht_survival(dist, x, &survival) != RADYN_OK ||
          radyn_pht_density(dist, x, &density) != RADYN_OK) {
        radyn_pht_free(dist);
        return complain("evaluation");
      }
      points.push_back({{"x", x}, {"survival", survival}, {"density", density}});
    }
    out["points"] = points;
  }
  if (opts.concentration_set) {
    double below = 0.0;
    double above = 0.0;
    if (radyn_concentration(opts.m, opts.d, 1.0 / opts.lambda, opts.concentration,
                            &below, &above) != RADYN_OK) {
      radyn_pht_free(dist);
      return complain("concentration");
    }
    out["concentration"] = {{"scale_ratio", opts.concentration},
                            {"below", below},
                            {"above", above}};
  }
  radyn_pht_free(dist);
  std::cout << out.dump(2) << "\n";
  return kExitOk;
}

int cmd_oracle() {
  char* text = nullptr;
  int failures = 0;
  if (radyn_oracle_checks(&text, &failures) != RADYN_OK)
    return complain("oracle checks failed to run");
  const nlohmann::json checks = nlohmann::json::parse(take_string(text));
  for (const auto& check : checks) {
    std::cout << (check["pass"].get<bool>() ? "PASS " : "FAIL ")
              << check["name"].get<std::string>() << " ("
              << check["detail"].get<std::string>() << ")\n";
  }
  std::cout << (failures == 0 ? "oracle: OK" : "oracle: FAIL") << "\n";
  return failures == 0 ? kExitOk : kExitVerdictFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"transition-time simulator and analytics"};
  app.require_subcommand(1);

  ConfigOptions run_opts;
  CLI::App* run = app.add_subcommand("run", "sweep the r grid, write outputs");
  add_config_options(run, run_opts);

  ValidateOptions validate_opts;
  CLI::App* validate = app.add_subcommand(
      "validate", "check a config file against the full schema");
  validate->add_option("--config", validate_opts.config_path,
                       "experiment config JSON file")
      ->required();
  validate->add_option("--seed", validate_opts.seed,
                       "override the config's master seed before checking")
      ->each([&](const std::string&) { validate_opts.seed_set = true; });

  PathsOptions paths_opts;
  CLI::App* paths =
      app.add_subcommand("paths", "enumerate greedy activation orders");
  CLI::Option* g = paths->add_option("--graph", paths_opts.graph_path,
                                     "graph JSON file");
  CLI::Option* c = paths->add_option("--complete", paths_opts.complete,
                                     "complete graph: M N")
                       ->expected(2);
  CLI::Option* rnd = paths->add_option("--random", paths_opts.random,
                                       "random graph: M N P SEED")
                         ->expected(4);
  g->excludes(c)->excludes(rnd);
  c->excludes(rnd);
  paths->add_option("--beta", paths_opts.beta,
                    "activation exponent for regime/prediction (default 0.5)");
  paths->add_flag("--csv", paths_opts.csv, "one CSV row per path");

  PhtOptions pht_opts;
  CLI::App* pht = app.add_subcommand(
      "pht", "disconnection-time law: mean, survival, density");
  pht->add_option("--m", pht_opts.m, "edge slots")->required();
  pht->add_option("--d", pht_opts.d, "initially present edges")->required();
  pht->add_option("--lambda", pht_opts.lambda, "per-slot flip rate")->required();
  CLI::Option* at_opt =
      pht->add_option("--at", pht_opts.at, "evaluation points (repeatable)");
  CLI::Option* conc_opt =
      pht->add_option("--concentration", pht_opts.concentration,
                      "tail pair at x = mean-scale * ratio")
          ->each([&](const std::string&) { pht_opts.concentration_set = true; });
  pht->add_option("--grid", pht_opts.grid,
                  "CSV dump of (x, survival, density): START STOP COUNT")
      ->expected(3)
      ->excludes(at_opt)
      ->excludes(conc_opt);

  CLI::App* oracle =
      app.add_subcommand("oracle", "run the library's independent self-checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitError;
  }

  if (run->parsed()) return cmd_run(run_opts);
  if (validate->parsed()) return cmd_validate(validate_opts);
  if (paths->parsed()) {
    if (paths_opts.graph_path.empty() && paths_opts.complete.empty() &&
        paths_opts.random.empty()) {
      std::cerr << "error: paths needs one of --graph/--complete/--random\n";
      return kExitError;
    }
    return cmd_paths(paths_opts);
  }
  if (pht->parsed()) return cmd_pht(pht_opts);
  if (oracle->parsed()) return cmd_oracle();
  return kExitError;
}
