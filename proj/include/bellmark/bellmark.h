/* C interface to the bellmark library.
 *
 * Every function returns a bm_status. On failure bm_last_error() describes
 * the error for the calling thread. Strings returned through char** outputs
 * are owned by the caller and released with bm_free_string. Handles are
 * released with their matching *_free function; passing NULL is allowed.
 */
#ifndef BELLMARK_BELLMARK_H
#define BELLMARK_BELLMARK_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define BM_API __declspec(dllexport)
#elif defined(__GNUC__)
#define BM_API __attribute__((visibility("default")))
#else
#define BM_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum bm_status {
  BM_OK = 0,
  BM_ERR_INVALID_ARGUMENT = 1,
  BM_ERR_NO_VIOLATION_MARGIN = 2,
  BM_ERR_NOT_FOUND = 3,
  BM_ERR_PRECONDITION = 4,
  BM_ERR_IO = 5,
  BM_ERR_INTERNAL = 6
} bm_status;

typedef struct bm_device bm_device;
typedef struct bm_record bm_record;

typedef struct bm_run_config {
  const char* device;   /* preset name or JSON file */
  const char* family;   /* "ghz" or "lc" */
  size_t n;
  uint64_t L;
  uint64_t K;
  uint32_t repetitions;
  double sigma;
  uint64_t seed;
  const char* noise;    /* "off", "device" or "global" */
  double alpha;         /* weight of the ideal state for "global" */
  const char* engine;   /* "frame" or "tableau" */
  unsigned workers;     /* 0: BELLMARK_WORKERS or hardware default */
} bm_run_config;

BM_API const char* bm_version(void);
BM_API const char* bm_last_error(void);
BM_API const char* bm_status_name(bm_status status);
BM_API void bm_free_string(char* s);

/* Fills `cfg` with defaults: eagle-127, lc, n = 6, L = 800, K = 1,
 * 10 repetitions, 5 sigma, seed 1, noise off, frame engine. */
BM_API void bm_run_config_init(bm_run_config* cfg);

/* JSON array of bundled preset names. */
BM_API bm_status bm_device_list(char** out_json);
BM_API bm_status bm_device_open(const char* name_or_path, bm_device** out);
BM_API void bm_device_free(bm_device* device);
BM_API bm_status bm_device_json(const bm_device* device, char** out_json);
/* {"name", "n_vertices", "n_edges", "max_degree", "longest_path", "noise"} */
BM_API bm_status bm_device_summary(const bm_device* device, char** out_json);

/* {"family", "n", "Q", "C", "D", "alpha_min", "M"} */
BM_API bm_status bm_bounds(const char* family, size_t n, char** out_json);

/* Terms needed to reject local hidden variables when the state has
 * white-noise weight alpha: {"L", "K", "M", "t", "gamma", ...}. */
BM_API bm_status bm_plan(const char* family, size_t n, double alpha, double sigma,
                         char** out_json);

/* Depolarization prediction from the device error rates:
 * {"alpha", "violation_fraction", "Q", "C", "D", "L"}. */
BM_API bm_status bm_predict(const char* device, const char* family, size_t n, double sigma,
                            char** out_json);

/* {"a", "n_max"}; n_max is null when unbounded. */
BM_API bm_status bm_violation_window_ghz(double a, char** out_json);

BM_API bm_status bm_run(const bm_run_config* cfg, bm_record** out);
BM_API void bm_record_free(bm_record* record);
BM_API bm_status bm_record_to_json(const bm_record* record, char** out_json);
BM_API bm_status bm_record_to_csv(const bm_record* record, int header, char** out_csv);
BM_API bm_status bm_record_from_json(const char* json, bm_record** out);
/* Aggregates only: {"n", "family", "mean_over_Q", "std_over_Q", ...}. */
BM_API bm_status bm_record_summary(const bm_record* record, char** out_json);

/* Runs `cfg` for each n and fits the mean estimate / Q. `form` is
 * "linear", "quadratic" or NULL (family default). When extrapolate_n > 0 the
 * model JSON also carries the extrapolated L at that n. */
BM_API bm_status bm_sweep(const bm_run_config* cfg, const size_t* ns, size_t count,
                          const char* form, double extrapolate_n, char** out_csv,
                          char** out_model_json);

/* Least squares on ln alpha. */
BM_API bm_status bm_fit(const double* n, const double* alpha, size_t count, const char* form,
                        char** out_json);

/* Required L at n for alpha = exp(-a n^2 - b n + c). `resolution` is the
 * rounding step of the coefficients (0: no interval). */
BM_API bm_status bm_extrapolate(const char* family, double a, double b, double c, double n,
                                double sigma, double resolution, char** out_json);

/* Preparation circuit placed on the device, with gate counts. */
BM_API bm_status bm_circuit_json(const char* device, const char* family, size_t n,
                                 char** out_json);

#ifdef __cplusplus
}
#endif

#endif /* BELLMARK_BELLMARK_H */
