#include "kembed/kembed.h"

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <new>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "kembed/error.hpp"
#include "kembed/integral_operator.hpp"
#include "kembed/kernel.hpp"
#include "kembed/measure.hpp"
#include "runner.hpp"

struct kembed_measure {
  kembed::DiscreteMeasure value;
};
struct kembed_kernel {
  kembed::Kernel value;
};
struct kembed_model {
  kembed::EmbeddingModel value;
};

namespace {

thread_local std::string last_error;

kembed_status status_of(kembed::Errc code) {
  using kembed::Errc;
  switch (code) {
    case Errc::invalid_argument: return KEMBED_INVALID_ARGUMENT;
    case Errc::resource_limit: return KEMBED_RESOURCE_LIMIT;
    case Errc::numeric_failure: return KEMBED_NUMERIC_FAILURE;
    case Errc::not_enumerable: return KEMBED_NOT_ENUMERABLE;
    case Errc::annotation_conflict: return KEMBED_ANNOTATION_CONFLICT;
    case Errc::refused: return KEMBED_REFUSED;
    case Errc::config: return KEMBED_CONFIG_ERROR;
    case Errc::io: return KEMBED_IO_ERROR;
  }
  return KEMBED_INTERNAL_ERROR;
}

template <class F>
kembed_status guarded(F&& f) {
  last_error.clear();
  try {
    f();
    return KEMBED_OK;
  } catch (const kembed::Error& e) {
    last_error = e.what();
    return status_of(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return KEMBED_RESOURCE_LIMIT;
  } catch (const std::exception& e) {
    last_error = e.what();
    return KEMBED_INTERNAL_ERROR;
  }
}

void need(const void* p, const char* what) {
  if (!p) kembed::fail(kembed::Errc::invalid_argument, std::string(what) + " is NULL");
}

}  // namespace

extern "C" {

const char* kembed_version(void) { return KEMBED_VERSION_STRING; }

const char* kembed_last_error(void) { return last_error.c_str(); }

const char* kembed_status_name(kembed_status status) {
  switch (status) {
    case KEMBED_OK: return "ok";
    case KEMBED_INVALID_ARGUMENT: return "invalid-argument";
    case KEMBED_RESOURCE_LIMIT: return "resource-limit";
    case KEMBED_NUMERIC_FAILURE: return "numeric-failure";
    case KEMBED_NOT_ENUMERABLE: return "not-enumerable";
    case KEMBED_ANNOTATION_CONFLICT: return "annotation-conflict";
    case KEMBED_REFUSED: return "refused";
    case KEMBED_CONFIG_ERROR: return "config-error";
    case KEMBED_IO_ERROR: return "io-error";
    case KEMBED_INTERNAL_ERROR: return "internal-error";
  }
  return "unknown";
}

kembed_status kembed_measure_grid(double a, double b, size_t m, kembed_measure** out) {
  return guarded([&] {
    need(out, "out");
    *out = new kembed_measure{kembed::uniform_grid_measure(a, b, m)};
  });
}

kembed_status kembed_measure_atoms(const double* atoms, const double* weights, size_t n,
                                   double lo, double hi, kembed_measure** out) {
  return guarded([&] {
    need(out, "out");
    need(atoms, "atoms");
    need(weights, "weights");
    *out = new kembed_measure{kembed::atomic_measure(std::vector<double>(atoms, atoms + n),
                                                     std::vector<double>(weights, weights + n),
                                                     kembed::Domain::interval(lo, hi))};
  });
}

size_t kembed_measure_size(const kembed_measure* m) { return m ? m->value.size() : 0; }

double kembed_measure_mass(const kembed_measure* m) { return m ? m->value.total_mass() : 0.0; }

void kembed_measure_free(kembed_measure* m) { delete m; }

kembed_status kembed_kernel_create(const char* name, const char* const* param_names,
                                   const double* param_values, size_t n_params,
                                   kembed_kernel** out) {
  return guarded([&] {
    need(out, "out");
    need(name, "name");
    kembed::Params params;
    if (n_params > 0) {
      need(param_names, "param_names");
      need(param_values, "param_values");
    }
    for (size_t i = 0; i < n_params; ++i) {
      need(param_names[i], "parameter name");
      params.emplace(param_names[i], param_values[i]);
    }
    *out = new kembed_kernel{kembed::make_kernel(name, params)};
  });
}

double kembed_kernel_eval(const kembed_kernel* k, double s, double t) {
  return k ? k->value(s, t) : 0.0;
}

void kembed_kernel_free(kembed_kernel* k) { delete k; }

kembed_status kembed_model_create(const kembed_kernel* k, const kembed_measure* m,
                                  kembed_model** out) {
  return guarded([&] {
    need(out, "out");
    need(k, "kernel");
    need(m, "measure");
    *out = new kembed_model{kembed::EmbeddingModel(k->value, m->value)};
  });
}

void kembed_model_free(kembed_model* model) { delete model; }

kembed_status kembed_model_singular_values(const kembed_model* model, size_t n, double* out,
                                           size_t* written) {
  return guarded([&] {
    need(model, "model");
    need(out, "out");
    need(written, "written");
    const size_t take = std::min(n, model->value.size());
    const kembed::SpectralReport r = kembed::spectrum(model->value, take);
    std::copy(r.singular_values.begin(), r.singular_values.end(), out);
    *written = r.singular_values.size();
  });
}

kembed_status kembed_model_hs_trace(const kembed_model* model, double* out) {
  return guarded([&] {
    need(model, "model");
    need(out, "out");
    *out = kembed::hs_trace(model->value);
  });
}

kembed_status kembed_model_kernel_l2_sq(const kembed_model* model, double* out) {
  return guarded([&] {
    need(model, "model");
    need(out, "out");
    *out = kembed::kernel_l2_norm_sq(model->value);
  });
}

kembed_status kembed_model_t3(const kembed_model* model, const double* f, size_t n, double* out) {
  return guarded([&] {
    need(model, "model");
    need(f, "f");
    need(out, "out");
    *out = kembed::t3_functional(model->value, std::span<const double>(f, n));
  });
}

kembed_status kembed_execute(const char* command, const char* config_json, const char* out_path,
                             const char* csv_path, char** report) {
  return guarded([&] {
    need(command, "command");
    need(config_json, "config_json");
    std::optional<std::string> out, csv;
    if (out_path) out = out_path;
    if (csv_path) csv = csv_path;
    const kembed::cli::RunOutput r = kembed::cli::execute(command, config_json, out, csv);
    if (report) *report = nullptr;
    if (report && !r.json_path) {
      char* copy = static_cast<char*>(std::malloc(r.report.size() + 1));
      if (!copy) throw std::bad_alloc();
      std::memcpy(copy, r.report.c_str(), r.report.size() + 1);
      *report = copy;
    }
  });
}

void kembed_string_free(char* s) { std::free(s); }

}  // extern "C"
