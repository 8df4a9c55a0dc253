/*
 * C interface to the kernel-embedding library.
 *
 * Handles are opaque and owned by the caller; release them with the matching
 * *_free function. Every fallible call returns a kembed_status; on failure
 * kembed_last_error() describes the problem until the next call on the same
 * thread.
 */
#ifndef KEMBED_KEMBED_H
#define KEMBED_KEMBED_H

#include <stddef.h>

#if defined(KEMBED_BUILDING_LIBRARY)
#define KEMBED_API __attribute__((visibility("default")))
#else
#define KEMBED_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum kembed_status {
  KEMBED_OK = 0,
  KEMBED_INVALID_ARGUMENT = 1,
  KEMBED_RESOURCE_LIMIT = 2,
  KEMBED_NUMERIC_FAILURE = 3,
  KEMBED_NOT_ENUMERABLE = 4,
  KEMBED_ANNOTATION_CONFLICT = 5,
  KEMBED_REFUSED = 6,
  KEMBED_CONFIG_ERROR = 7,
  KEMBED_IO_ERROR = 8,
  KEMBED_INTERNAL_ERROR = 9
} kembed_status;

typedef struct kembed_measure kembed_measure;
typedef struct kembed_kernel kembed_kernel;
typedef struct kembed_model kembed_model;

KEMBED_API const char* kembed_version(void);
KEMBED_API const char* kembed_last_error(void);
KEMBED_API const char* kembed_status_name(kembed_status status);

/* Measures */
KEMBED_API kembed_status kembed_measure_grid(double a, double b, size_t m, kembed_measure** out);
/* Atoms on the closed interval [lo, hi]; infinite bounds are allowed. */
KEMBED_API kembed_status kembed_measure_atoms(const double* atoms, const double* weights,
                                              size_t n, double lo, double hi,
                                              kembed_measure** out);
KEMBED_API size_t kembed_measure_size(const kembed_measure* m);
KEMBED_API double kembed_measure_mass(const kembed_measure* m);
KEMBED_API void kembed_measure_free(kembed_measure* m);

/* Kernels: "min", "gaussian" (param "sigma"), "zero". Parameter names and
 * values are parallel arrays of length n_params. */
KEMBED_API kembed_status kembed_kernel_create(const char* name, const char* const* param_names,
                                              const double* param_values, size_t n_params,
                                              kembed_kernel** out);
KEMBED_API double kembed_kernel_eval(const kembed_kernel* k, double s, double t);
KEMBED_API void kembed_kernel_free(kembed_kernel* k);

/* Embedding models; the model keeps its own copies of kernel and measure. */
KEMBED_API kembed_status kembed_model_create(const kembed_kernel* k, const kembed_measure* m,
                                             kembed_model** out);
KEMBED_API void kembed_model_free(kembed_model* model);

/* Writes min(n, atoms) singular values, descending, and their count. */
KEMBED_API kembed_status kembed_model_singular_values(const kembed_model* model, size_t n,
                                                      double* out, size_t* written);
KEMBED_API kembed_status kembed_model_hs_trace(const kembed_model* model, double* out);
KEMBED_API kembed_status kembed_model_kernel_l2_sq(const kembed_model* model, double* out);
/* f has one value per atom. */
KEMBED_API kembed_status kembed_model_t3(const kembed_model* model, const double* f, size_t n,
                                         double* out);

/* Runs a CLI command on a JSON config document. The report goes to
 * out_path, or to the config's output.json when out_path is NULL; the CSV
 * table likewise goes to csv_path or output.csv. When no JSON path applies
 * the report is returned in *report (release with kembed_string_free),
 * otherwise *report is set to NULL. Nothing is written on failure. */
KEMBED_API kembed_status kembed_execute(const char* command, const char* config_json,
                                        const char* out_path, const char* csv_path,
                                        char** report);
KEMBED_API void kembed_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif /* KEMBED_KEMBED_H */
