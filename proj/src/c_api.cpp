#include "unruhqi/unruhqi.h"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iostream>
#include <memory>
#include <new>
#include <sstream>
#include <stdexcept>
#include <string>

#include "unruhqi/analysis.hpp"
#include "unruhqi/correlations.hpp"
#include "unruhqi/states.hpp"
#include "unruhqi/steering.hpp"
#include "unruhqi/unruh.hpp"

struct uqi_state {
  uqi::TwoQubitState state;
};

struct uqi_analysis {
  uqi::AnalysisRecord record;
  std::string json;
};

namespace {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

thread_local std::string g_last_error;

uqi_status fail(uqi_status status, const char* message) {
  g_last_error = message;
  return status;
}

// Runs body and maps exceptions onto status codes.
template <typename F>
uqi_status guarded(F&& body) {
  try {
    body();
    return UQI_OK;
  } catch (const IoError& e) {
    return fail(UQI_ERR_IO, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(UQI_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::out_of_range& e) {
    return fail(UQI_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::domain_error& e) {
    return fail(UQI_ERR_DOMAIN, e.what());
  } catch (const std::bad_alloc&) {
    return fail(UQI_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(UQI_ERR_INTERNAL, e.what());
  }
}

#define UQI_REQUIRE(ptr)                                                 \
  do {                                                                   \
    if ((ptr) == nullptr) return fail(UQI_ERR_NULL_ARGUMENT, #ptr " is NULL"); \
  } while (0)

uqi::Qubit to_qubit(int selector) {
  switch (selector) {
    case UQI_FIRST: return uqi::Qubit::first;
    case UQI_SECOND: return uqi::Qubit::second;
    default: throw std::invalid_argument("qubit selector must be UQI_FIRST or UQI_SECOND");
  }
}

void export_matrix(const uqi::ComplexMatrix& m, double* entries) {
  const std::size_t n = m.dim();
  for (std::size_t i = 0; i < n * n; ++i) {
    entries[2 * i] = m.entries()[i].real();
    entries[2 * i + 1] = m.entries()[i].imag();
  }
}

uqi::AnalysisOptions to_options(const uqi_options* options) {
  uqi::AnalysisOptions out;
  if (options == nullptr) return out;
  out.with_oracles = options->with_oracles != 0;
  out.oracle_grid = options->oracle_grid;
  out.oracle_refine = options->oracle_refine;
  out.quadrature_nodes = options->quadrature_nodes;
  if (options->threads < 0) throw std::invalid_argument("threads must be >= 0");
  out.threads = static_cast<unsigned>(options->threads);
  return out;
}

template <typename Writer>
void write_to(const char* path, Writer&& writer) {
  if (std::strcmp(path, "-") == 0) {
    writer(std::cout);
    std::cout.flush();
    return;
  }
  // Render fully before touching the file so a failed computation leaves no partial output.
  std::ostringstream buffer;
  writer(buffer);
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError(std::string("cannot open '") + path + "' for writing");
  file << buffer.str();
  file.flush();
  if (!file) throw IoError(std::string("failed writing '") + path + "'");
}

uqi_status emit_state(uqi::TwoQubitState state, uqi_state** out) {
  *out = new uqi_state{std::move(state)};
  return UQI_OK;
}

}  // namespace

extern "C" {

const char* uqi_version(void) { return "1.0.0"; }

const char* uqi_last_error(void) { return g_last_error.c_str(); }

const char* uqi_status_name(uqi_status status) {
  switch (status) {
    case UQI_OK: return "ok";
    case UQI_ERR_NULL_ARGUMENT: return "null argument";
    case UQI_ERR_INVALID_ARGUMENT: return "invalid argument";
    case UQI_ERR_DOMAIN: return "domain error";
    case UQI_ERR_IO: return "i/o error";
    case UQI_ERR_BUFFER_TOO_SMALL: return "buffer too small";
    case UQI_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

uqi_status uqi_state_from_matrix(const double entries[32], uqi_state** out) {
  UQI_REQUIRE(entries);
  UQI_REQUIRE(out);
  return guarded([&] {
    uqi::ComplexMatrix m(4);
    for (std::size_t r = 0; r < 4; ++r) {
      for (std::size_t c = 0; c < 4; ++c) {
        const std::size_t i = 4 * r + c;
        m(r, c) = uqi::Complex{entries[2 * i], entries[2 * i + 1]};
      }
    }
    emit_state(uqi::TwoQubitState(m, "from_matrix"), out);
  });
}

uqi_status uqi_state_werner(double p, uqi_state** out) {
  UQI_REQUIRE(out);
  return guarded([&] { emit_state(uqi::werner(p), out); });
}

uqi_status uqi_state_alice_rob(double p, double r, uqi_state** out) {
  UQI_REQUIRE(out);
  return guarded([&] { emit_state(uqi::alice_rob_state(p, uqi::UnruhParameter(r)), out); });
}

uqi_status uqi_state_apply_unruh(const uqi_state* state, int target, double r, uqi_state** out) {
  UQI_REQUIRE(state);
  UQI_REQUIRE(out);
  return guarded(
      [&] { emit_state(uqi::apply_unruh(state->state, to_qubit(target), uqi::UnruhParameter(r)), out); });
}

uqi_status uqi_state_canonical(const uqi_state* state, uqi_state** out) {
  UQI_REQUIRE(state);
  UQI_REQUIRE(out);
  return guarded([&] { emit_state(uqi::canonical_state(state->state), out); });
}

uqi_status uqi_state_matrix(const uqi_state* state, double entries[32]) {
  UQI_REQUIRE(state);
  UQI_REQUIRE(entries);
  export_matrix(state->state.matrix(), entries);
  return UQI_OK;
}

uqi_status uqi_state_pauli(const uqi_state* state, double a[3], double b[3], double T[9]) {
  UQI_REQUIRE(state);
  UQI_REQUIRE(a);
  UQI_REQUIRE(b);
  UQI_REQUIRE(T);
  return guarded([&] {
    const uqi::PauliDecomposition d = uqi::pauli_decompose(state->state);
    std::copy(d.a.begin(), d.a.end(), a);
    std::copy(d.b.begin(), d.b.end(), b);
    std::copy(d.T.data.begin(), d.T.data.end(), T);
  });
}

uqi_status uqi_state_is_x(const uqi_state* state, double tol, int* is_x) {
  UQI_REQUIRE(state);
  UQI_REQUIRE(is_x);
  *is_x = uqi::is_x_state(state->state, tol) ? 1 : 0;
  return UQI_OK;
}

void uqi_state_free(uqi_state* state) { delete state; }

uqi_status uqi_r_from_acceleration(double omega, double accel, double c, double* r) {
  UQI_REQUIRE(r);
  return guarded([&] { *r = uqi::r_from_acceleration(omega, accel, c).value(); });
}

uqi_status uqi_unruh_kraus(double r, double k0[8], double k1[8]) {
  UQI_REQUIRE(k0);
  UQI_REQUIRE(k1);
  return guarded([&] {
    const uqi::KrausPair pair = uqi::unruh_kraus(uqi::UnruhParameter(r));
    export_matrix(pair.k0, k0);
    export_matrix(pair.k1, k1);
  });
}

uqi_status uqi_concurrence(const uqi_state* state, double* value) {
  UQI_REQUIRE(state);
  UQI_REQUIRE(value);
  return guarded([&] { *value = uqi::concurrence(state->state); });
}

uqi_status uqi_concurrence_x(const uqi_state* state, double* value) {
  UQI_REQUIRE(state);
  UQI_REQUIRE(value);
  return guarded([&] { *value = uqi::concurrence_x_closed_form(state->state); });
}

uqi_status uqi_concurrence_eq17(double p, double r, double* value) {
  UQI_REQUIRE(value);
  return guarded([&] { *value = uqi::concurrence_eq17(p, uqi::UnruhParameter(r)); });
}

uqi_status uqi_ppt(const uqi_state* state, double* min_eigenvalue, int* entangled) {
  UQI_REQUIRE(state);
  UQI_REQUIRE(min_eigenvalue);
  UQI_REQUIRE(entangled);
  return guarded([&] {
    const uqi::PptResult result = uqi::ppt_test(state->state);
    *min_eigenvalue = result.min_eigenvalue;
    *entangled = result.entangled ? 1 : 0;
  });
}

uqi_status uqi_chsh_m(const uqi_state* state, double* m, double* b_max) {
  UQI_REQUIRE(state);
  UQI_REQUIRE(m);
  return guarded([&] {
    const double value = uqi::chsh_m(state->state);
    *m = value;
    if (b_max) *b_max = uqi::chsh_b_max(value);
  });
}

uqi_status uqi_separability_threshold(double r, double* p) {
  UQI_REQUIRE(p);
  return guarded([&] { *p = uqi::separability_threshold(uqi::UnruhParameter(r)); });
}

uqi_status uqi_bell_threshold(double r, double* p) {
  UQI_REQUIRE(p);
  return guarded([&] { *p = uqi::bell_threshold(uqi::UnruhParameter(r)); });
}

uqi_status uqi_steering_ellipsoid(const uqi_state* state, int steered, double center[3], double semiaxes[3],
                                  double axes[9]) {
  UQI_REQUIRE(state);
  UQI_REQUIRE(center);
  UQI_REQUIRE(semiaxes);
  return guarded([&] {
    const uqi::SteeringEllipsoid e = uqi::steering_ellipsoid(state->state, to_qubit(steered));
    std::copy(e.center.begin(), e.center.end(), center);
    std::copy(e.semiaxes.begin(), e.semiaxes.end(), semiaxes);
    if (axes) std::copy(e.axes.data.begin(), e.axes.data.end(), axes);
  });
}

uqi_status uqi_msc_closed_form(const uqi_state* state, int steered, double* value) {
  UQI_REQUIRE(state);
  UQI_REQUIRE(value);
  return guarded([&] { *value = uqi::msc_closed_form(state->state, to_qubit(steered)); });
}

uqi_status uqi_msc_oracle(const uqi_state* state, int steered, int grid_density, int refine_iters, double* value) {
  UQI_REQUIRE(state);
  UQI_REQUIRE(value);
  return guarded([&] { *value = uqi::msc_oracle(state->state, to_qubit(steered), grid_density, refine_iters); });
}

uqi_status uqi_critical_radius_analytic(double p, double r, double* value, int* unsteerable) {
  UQI_REQUIRE(value);
  return guarded([&] {
    const uqi::CriticalRadiusResult result = uqi::critical_radius_analytic(p, uqi::UnruhParameter(r));
    *value = result.value;
    if (unsteerable) *unsteerable = result.unsteerable ? 1 : 0;
  });
}

uqi_status uqi_critical_radius_quadrature(const double T[9], int nodes, double* value, int* unsteerable) {
  UQI_REQUIRE(T);
  UQI_REQUIRE(value);
  return guarded([&] {
    uqi::Mat3 m;
    std::copy(T, T + 9, m.data.begin());
    const uqi::CriticalRadiusResult result = uqi::critical_radius_quadrature(m, nodes);
    *value = result.value;
    if (unsteerable) *unsteerable = result.unsteerable ? 1 : 0;
  });
}

uqi_status uqi_steerability_threshold(double r, double* p) {
  UQI_REQUIRE(p);
  return guarded([&] { *p = uqi::steerability_threshold(uqi::UnruhParameter(r)); });
}

void uqi_options_default(uqi_options* options) {
  if (options == nullptr) return;
  const uqi::AnalysisOptions defaults;
  options->with_oracles = defaults.with_oracles ? 1 : 0;
  options->oracle_grid = defaults.oracle_grid;
  options->oracle_refine = defaults.oracle_refine;
  options->quadrature_nodes = defaults.quadrature_nodes;
  options->threads = static_cast<int>(defaults.threads);
}

uqi_status uqi_analyze(double p, double r, const uqi_options* options, uqi_analysis** out) {
  UQI_REQUIRE(out);
  return guarded([&] {
    auto analysis = std::make_unique<uqi_analysis>();
    analysis->record = uqi::analyze(p, uqi::UnruhParameter(r), to_options(options));
    analysis->json = uqi::to_json(analysis->record);
    *out = analysis.release();
  });
}

uqi_status uqi_analysis_json(const uqi_analysis* analysis, char* buffer, size_t size, size_t* needed) {
  UQI_REQUIRE(analysis);
  const std::size_t required = analysis->json.size() + 1;
  if (needed) *needed = required;
  if (buffer == nullptr) return UQI_OK;
  if (size < required) return fail(UQI_ERR_BUFFER_TOO_SMALL, "JSON buffer too small");
  std::memcpy(buffer, analysis->json.c_str(), required);
  return UQI_OK;
}

void uqi_analysis_free(uqi_analysis* analysis) { delete analysis; }

void uqi_sweep_spec_default(uqi_sweep_spec* spec) {
  if (spec == nullptr) return;
  const uqi::SweepSpec defaults;
  spec->p_min = defaults.p_min;
  spec->p_max = defaults.p_max;
  spec->p_steps = defaults.p_steps;
  spec->r_min = defaults.r_min;
  spec->r_max = defaults.r_max;
  spec->r_steps = defaults.r_steps;
  spec->quantities = nullptr;
}

uqi_status uqi_sweep_csv(const uqi_sweep_spec* spec, const uqi_options* options, const char* path) {
  UQI_REQUIRE(spec);
  UQI_REQUIRE(path);
  return guarded([&] {
    uqi::SweepSpec s;
    s.p_min = spec->p_min;
    s.p_max = spec->p_max;
    s.p_steps = spec->p_steps;
    s.r_min = spec->r_min;
    s.r_max = spec->r_max;
    s.r_steps = spec->r_steps;
    if (spec->quantities != nullptr && spec->quantities[0] != '\0') {
      s.quantities.clear();
      std::stringstream list(spec->quantities);
      std::string item;
      while (std::getline(list, item, ',')) {
        if (!item.empty()) s.quantities.insert(uqi::parse_quantity(item));
      }
    }
    const uqi::AnalysisOptions opts = to_options(options);
    s.validate();
    write_to(path, [&](std::ostream& os) { uqi::write_sweep_csv(s, opts, os); });
  });
}

uqi_status uqi_ellipsoid_csv(double p, double r, int steered, int samples, const char* path) {
  UQI_REQUIRE(path);
  return guarded([&] {
    const uqi::Qubit q = to_qubit(steered);
    const uqi::UnruhParameter param(r);
    write_to(path, [&](std::ostream& os) { uqi::write_ellipsoid_csv(p, param, q, samples, os); });
  });
}

}  // extern "C"
