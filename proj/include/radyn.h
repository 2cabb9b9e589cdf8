/* C interface to the transition-time simulator and analytics.
 *
 * Every object is an opaque handle created and destroyed here. Functions
 * return RADYN_OK or an error code; radyn_last_error() describes the most
 * recent failure on the calling thread. Strings returned through char**
 * out-parameters are heap copies owned by the caller; release them with
 * radyn_string_free.
 */

#ifndef RADYN_H
#define RADYN_H

#include <stdint.h>

#ifndef RADYN_API
#if defined(_WIN32)
#ifdef RADYN_BUILD
#define RADYN_API __declspec(dllexport)
#else
#define RADYN_API __declspec(dllimport)
#endif
#else
#define RADYN_API __attribute__((visibility("default")))
#endif
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum radyn_status {
  RADYN_OK = 0,
  RADYN_ERR_INVALID_ARGUMENT = 1, /* bad parameter value or handle */
  RADYN_ERR_CONFIG = 2,           /* config text failed to parse or validate */
  RADYN_ERR_TIMEOUT = 3,          /* reserved: every replication hit the cap */
  RADYN_ERR_CAPACITY = 4,         /* enumeration or size guard tripped */
  RADYN_ERR_DOMAIN = 5,           /* model state admits no answer */
  RADYN_ERR_IO = 6,               /* file could not be read or written */
  RADYN_ERR_INTERNAL = 7
} radyn_status;

typedef struct radyn_graph radyn_graph;
typedef struct radyn_config radyn_config;
typedef struct radyn_pht radyn_pht;

/* Library identity and error reporting. */
RADYN_API const char* radyn_version(void);
RADYN_API const char* radyn_rng_algorithm(void);
/* Message for the last failing call on this thread; never NULL. */
RADYN_API const char* radyn_last_error(void);
RADYN_API void radyn_string_free(char* text);

/* Bipartite interference graphs. */
RADYN_API radyn_status radyn_graph_from_json(const char* json_text,
                                             radyn_graph** out_graph);
RADYN_API radyn_status radyn_graph_complete(int m, int n, radyn_graph** out_graph);
RADYN_API radyn_status radyn_graph_random(int m, int n, double p, uint64_t seed,
                                          radyn_graph** out_graph);
RADYN_API radyn_status radyn_graph_to_json(const radyn_graph* graph,
                                           char** out_json_text);
RADYN_API void radyn_graph_free(radyn_graph* graph);

/* Experiment configs (see README for the JSON schema). */
RADYN_API radyn_status radyn_config_from_json(const char* json_text,
                                              radyn_config** out_config);
RADYN_API radyn_status radyn_config_from_file(const char* path,
                                              radyn_config** out_config);
RADYN_API void radyn_config_free(radyn_config* config);

/* One replication at scale r with an explicit stream seed; the record
 * (transition time, activation causes, event counts) comes back as JSON. */
RADYN_API radyn_status radyn_run_transition(const radyn_config* config, double r,
                                            uint64_t seed,
                                            char** out_record_json);

/* Full sweep over the config's r grid. output_dir NULL defers to the
 * config's own output entry, "" forces in-memory only, anything else is
 * a directory that receives replications.csv, summary.csv and
 * report.json. The report JSON is also returned. */
RADYN_API radyn_status radyn_run_sweep(const radyn_config* config, int workers,
                                       const char* output_dir,
                                       char** out_report_json);

/* Sweep plus verdict: *out_ok = 1 when the fitted exponent and the
 * observed/predicted ratio both sit inside the configured tolerances. */
RADYN_API radyn_status radyn_validate(const radyn_config* config, int workers,
                                      const char* output_dir, int* out_ok,
                                      char** out_report_json);

/* Greedy activation-order ensemble of a static graph, as JSON. */
RADYN_API radyn_status radyn_enumerate_paths(const radyn_graph* graph,
                                             char** out_json_text);

/* Ensemble plus the regime classification and the fixed-rate mean
 * transition-time prediction at exponent beta. Queue parameters enter
 * only through the supercritical drain bound and default to unit scale
 * (initial workload r, drain speed 1, no arrivals). */
RADYN_API radyn_status radyn_path_report(const radyn_graph* graph, double beta,
                                         char** out_json_text);

/* Mean time to lose all d present edges out of m slots, unit flip rate
 * scaled by mu = 1/lambda. */
RADYN_API radyn_status radyn_disconnection_coefficient(int m, int d,
                                                       double* out_value);

/* Phase-type law of the disconnection time. */
RADYN_API radyn_status radyn_pht_create(int m, int d, double lambda,
                                        radyn_pht** out_dist);
RADYN_API radyn_status radyn_pht_survival(const radyn_pht* dist, double x,
                                          double* out_value);
RADYN_API radyn_status radyn_pht_density(const radyn_pht* dist, double x,
                                         double* out_value);
RADYN_API radyn_status radyn_pht_mean(const radyn_pht* dist, double* out_value);
RADYN_API void radyn_pht_free(radyn_pht* dist);

/* P(D <= mu*scale_ratio) and P(D >= mu*scale_ratio) for the m-edge
 * disconnection time started from d present edges. */
RADYN_API radyn_status radyn_concentration(int m, int d, double mu,
                                           double scale_ratio, double* out_below,
                                           double* out_above);

/* Self-check suite; returns a JSON list of {name, pass, detail} and the
 * number of failing checks. */
RADYN_API radyn_status radyn_oracle_checks(char** out_json_text,
                                           int* out_failures);

#ifdef __cplusplus
}
#endif

#endif /* RADYN_H */
