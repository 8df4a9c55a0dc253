/* Exercises the C header from a C translation unit. */
#include <math.h>
#include <stdio.h>
#include <string.h>

#include "kembed/kembed.h"

static int failures = 0;

#define EXPECT(cond)                                             \
  do {                                                           \
    if (!(cond)) {                                               \
      fprintf(stderr, "%s:%d: expected %s\n", __FILE__, __LINE__, #cond); \
      ++failures;                                                \
    }                                                            \
  } while (0)

int main(void) {
  kembed_measure* m = NULL;
  kembed_kernel* k = NULL;
  kembed_model* model = NULL;
  double sv[4];
  size_t written = 0;
  double trace = 0.0, l2 = 0.0, t3 = 0.0;
  const double atoms[] = {0.25, 0.75};
  const double weights[] = {0.5, 0.5};
  const double f[] = {0.0, 0.0};
  const char* names[] = {"sigma"};
  const double values[] = {-1.0};
  char* report = NULL;

  EXPECT(strlen(kembed_version()) > 0);

  EXPECT(kembed_measure_atoms(atoms, weights, 2, 0.0, 1.0, &m) == KEMBED_OK);
  EXPECT(kembed_measure_size(m) == 2);
  EXPECT(kembed_measure_mass(m) == 1.0);
  EXPECT(kembed_kernel_create("min", NULL, NULL, 0, &k) == KEMBED_OK);
  EXPECT(kembed_kernel_eval(k, 0.2, 0.9) == 0.2);
  EXPECT(kembed_model_create(k, m, &model) == KEMBED_OK);

  EXPECT(kembed_model_singular_values(model, 4, sv, &written) == KEMBED_OK);
  EXPECT(written == 2);
  EXPECT(fabs(sv[0] - sqrt((0.5 + sqrt(0.125)) / 2)) < 1e-14);
  EXPECT(kembed_model_hs_trace(model, &trace) == KEMBED_OK && trace == 0.5);
  EXPECT(kembed_model_kernel_l2_sq(model, &l2) == KEMBED_OK && fabs(l2 - 0.1875) < 1e-15);
  EXPECT(kembed_model_t3(model, f, 2, &t3) == KEMBED_OK && t3 == 0.0);
  EXPECT(kembed_model_t3(model, f, 1, &t3) == KEMBED_INVALID_ARGUMENT);
  EXPECT(strlen(kembed_last_error()) > 0);

  {
    kembed_kernel* bad = NULL;
    EXPECT(kembed_kernel_create("gaussian", names, values, 1, &bad) == KEMBED_INVALID_ARGUMENT);
    EXPECT(bad == NULL);
    EXPECT(kembed_measure_grid(0.0, 1.0, 0, &m) == KEMBED_INVALID_ARGUMENT);
  }

  EXPECT(kembed_execute("seq-example", "{\"pair\": \"log_example\"}", NULL, NULL, &report) == KEMBED_OK);
  EXPECT(report != NULL && strstr(report, "\"YesCertified\"") != NULL);
  kembed_string_free(report);
  report = NULL;
  EXPECT(kembed_execute("spectrum", "{}", NULL, NULL, &report) == KEMBED_CONFIG_ERROR);
  EXPECT(report == NULL);
  EXPECT(strcmp(kembed_status_name(KEMBED_NOT_ENUMERABLE), "not-enumerable") == 0);

  kembed_model_free(model);
  kembed_kernel_free(k);
  kembed_measure_free(m);
  if (failures == 0) printf("capi: all checks passed\n");
  return failures == 0 ? 0 : 1;
}
