#ifndef GTP_GTP_H
#define GTP_GTP_H

/*
 * C interface to the team-partitioning library.
 *
 * Objects are opaque handles released with the matching *_free function.
 * Every fallible call returns a gtp_status; on failure gtp_last_error()
 * returns a message for the calling thread, valid until its next call.
 * Strings returned through char** are released with gtp_string_free.
 */

#include <stddef.h>
#include <stdint.h>

#if defined(GTP_BUILDING_LIBRARY)
#define GTP_API __attribute__((visibility("default")))
#else
#define GTP_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum gtp_status {
  GTP_OK = 0,
  GTP_ERR_DIMENSION = 1,
  GTP_ERR_BUDGET = 2,
  GTP_ERR_INFEASIBLE = 3,
  GTP_ERR_VALIDATION = 4,
  GTP_ERR_PARSE = 5,
  GTP_ERR_SIZE_GUARD = 6,
  GTP_ERR_NUMERIC = 7,
  GTP_ERR_IO = 8,
  GTP_ERR_UNKNOWN_ALGORITHM = 9,
  GTP_ERR_NULL_ARGUMENT = 10,
  GTP_ERR_INTERNAL = 11
} gtp_status;

typedef struct gtp_pool gtp_pool;
typedef struct gtp_targets gtp_targets;
typedef struct gtp_report gtp_report;

GTP_API const char* gtp_version(void);
/* Short machine-readable name such as "parse" or "size_guard". */
GTP_API const char* gtp_status_name(gtp_status status);
GTP_API const char* gtp_last_error(void);
GTP_API void gtp_string_free(char* s);

/* Candidate pools. ids may be NULL, in which case rows are named "0".."n-1". */
GTP_API gtp_status gtp_pool_load(const char* path, gtp_pool** out);
GTP_API gtp_status gtp_pool_from_values(const double* values, size_t n, size_t dim, const char* const* ids,
                                        gtp_pool** out);
GTP_API gtp_status gtp_pool_save(const gtp_pool* pool, const char* path);
GTP_API size_t gtp_pool_size(const gtp_pool* pool);
GTP_API size_t gtp_pool_dim(const gtp_pool* pool);
GTP_API void gtp_pool_free(gtp_pool* pool);

/* Target sets. method is one of "mean", "sample" or "sobol". */
GTP_API gtp_status gtp_targets_load(const char* path, gtp_targets** out);
GTP_API gtp_status gtp_targets_from_values(const double* values, size_t k, size_t dim, gtp_targets** out);
GTP_API gtp_status gtp_targets_generate(const gtp_pool* pool, const char* method, size_t k, uint64_t seed,
                                        gtp_targets** out);
GTP_API gtp_status gtp_targets_save(const gtp_targets* targets, const char* path);
GTP_API size_t gtp_targets_size(const gtp_targets* targets);
GTP_API void gtp_targets_free(gtp_targets* targets);

typedef struct gtp_solve_options {
  size_t budget;          /* number of candidates to remove */
  uint64_t seed;
  const char* cis_method; /* "cvx" or "greedy"; NULL means "cvx" */
  unsigned threads;       /* benefit-matrix workers, 0 means 1 */
  int refine;             /* nonzero: extra reassignment after removal */
} gtp_solve_options;

GTP_API void gtp_solve_options_init(gtp_solve_options* options);

/* Algorithm names: guided_split, max_benefit, random, kmeans, kmeans_t,
 * kmeans_mm, knn_kmeans, btf_cvx, btf_greedy. */
GTP_API gtp_status gtp_solve(const gtp_pool* pool, const gtp_targets* targets, const char* algorithm,
                             const gtp_solve_options* options, gtp_report** out);
GTP_API double gtp_report_cost(const gtp_report* report);
GTP_API double gtp_report_wall_time(const gtp_report* report);
GTP_API size_t gtp_report_removed_count(const gtp_report* report);
/* 0-based team of candidate i, or -1 when it was removed. */
GTP_API int gtp_report_team(const gtp_report* report, size_t i);
/* config_json is echoed under "config" and may be NULL. With include_timing
 * zero the wall time is written as 0 so reruns are byte-identical. */
GTP_API gtp_status gtp_report_to_json(const gtp_report* report, const char* config_json, int include_timing,
                                      char** out);
GTP_API void gtp_report_free(gtp_report* report);

/* Exhaustive solve of the removal-and-partition problem; JSON result. */
GTP_API gtp_status gtp_oracle_json(const gtp_pool* pool, const gtp_targets* targets, size_t budget, char** out);

/* Runs a sweep described by a JSON document and returns the raw rows CSV and
 * the per-cell summary CSV. */
GTP_API gtp_status gtp_bench_json(const char* config_json, char** rows_csv, char** summary_csv);

/* Writes a planted synthetic instance. labels_path may be NULL. */
GTP_API gtp_status gtp_synth_save(size_t k, size_t m, size_t noise, size_t dim, double sigma, uint64_t seed,
                                  const char* pool_path, const char* targets_path, const char* labels_path);

#ifdef __cplusplus
}
#endif

#endif
