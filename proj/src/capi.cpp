#include <cstring>
#include <fstream>
#include <memory>
#include <new>
#include <sstream>
#include <string>

#include "chebyshev.hpp"
#include "error.hpp"
#include "experiments.hpp"
#include "expoly/expoly.h"
#include "moments.hpp"
#include "ode_coeffs.hpp"
#include "orthopoly.hpp"
#include "potential.hpp"
#include "projection.hpp"
#include "quadrature.hpp"

struct expoly_potential {
  expoly::EvenPolynomialPotential value;
};
struct expoly_quadrature {
  expoly::QuadratureRule value;
};
struct expoly_moments {
  expoly::MomentTable value;
};
struct expoly_recurrence {
  expoly::RecurrenceCoefficients value;
};
struct expoly_config {
  expoly::ExperimentConfig value;
};

namespace {

thread_local std::string last_error;

expoly_status status_of(expoly::ErrorCode code) {
  switch (code) {
    case expoly::ErrorCode::InvalidArgument:
      return EXPOLY_INVALID_ARGUMENT;
    case expoly::ErrorCode::Domain:
      return EXPOLY_DOMAIN;
    case expoly::ErrorCode::Range:
      return EXPOLY_RANGE;
    case expoly::ErrorCode::Precondition:
      return EXPOLY_PRECONDITION;
    case expoly::ErrorCode::Breakdown:
      return EXPOLY_BREAKDOWN;
    case expoly::ErrorCode::InsufficientData:
      return EXPOLY_INSUFFICIENT_DATA;
    case expoly::ErrorCode::Io:
      return EXPOLY_IO;
  }
  return EXPOLY_INTERNAL;
}

expoly_status fail(expoly_status status, std::string message) {
  last_error = std::move(message);
  return status;
}

template <class F>
expoly_status guarded(F&& body) {
  last_error.clear();
  try {
    return body();
  } catch (const expoly::Error& e) {
    return fail(status_of(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(EXPOLY_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(EXPOLY_INTERNAL, e.what());
  }
}

#define EXPOLY_REQUIRE(cond)                                                   \
  do {                                                                         \
    if (!(cond)) return fail(EXPOLY_INVALID_ARGUMENT, "null or invalid argument: " #cond); \
  } while (0)

expoly_status copy_text(const std::string& text, char* buf, std::size_t len) {
  if (buf == nullptr || len == 0) return fail(EXPOLY_BUFFER_TOO_SMALL, "output buffer is empty");
  const std::size_t n = std::min(text.size(), len - 1);
  std::memcpy(buf, text.data(), n);
  buf[n] = '\0';
  if (n < text.size()) {
    return fail(EXPOLY_BUFFER_TOO_SMALL, "output needs " + std::to_string(text.size() + 1) + " bytes");
  }
  return EXPOLY_OK;
}

template <class T>
const T& checked_index(const std::vector<T>& v, int k) {
  if (k < 0 || static_cast<std::size_t>(k) >= v.size()) {
    throw expoly::Error(expoly::ErrorCode::InvalidArgument, "index " + std::to_string(k) + " out of range");
  }
  return v[k];
}

expoly::MomentMethod to_method(expoly_moment_method m) {
  switch (m) {
    case EXPOLY_MOMENTS_QUADRATURE:
      return expoly::MomentMethod::Quadrature;
    case EXPOLY_MOMENTS_RECURSION:
      return expoly::MomentMethod::Recursion;
    case EXPOLY_MOMENTS_CLOSED_FORM_HERMITE:
      return expoly::MomentMethod::ClosedFormHermite;
  }
  throw expoly::Error(expoly::ErrorCode::InvalidArgument, "unknown moment method");
}

}  // namespace

extern "C" {

const char* expoly_version(void) { return "1.0.0"; }

const char* expoly_status_string(expoly_status status) {
  switch (status) {
    case EXPOLY_OK:
      return "ok";
    case EXPOLY_INVALID_ARGUMENT:
      return "invalid argument";
    case EXPOLY_DOMAIN:
      return "domain error";
    case EXPOLY_RANGE:
      return "range error";
    case EXPOLY_PRECONDITION:
      return "precondition violated";
    case EXPOLY_BREAKDOWN:
      return "numerical breakdown";
    case EXPOLY_INSUFFICIENT_DATA:
      return "insufficient data";
    case EXPOLY_IO:
      return "i/o error";
    case EXPOLY_BUFFER_TOO_SMALL:
      return "buffer too small";
    case EXPOLY_INTERNAL:
      return "internal error";
  }
  return "unknown status";
}

const char* expoly_last_error(void) { return last_error.c_str(); }

expoly_status expoly_potential_parse(const char* text, expoly_potential** out) {
  return guarded([&] {
    EXPOLY_REQUIRE(text && out);
    *out = new expoly_potential{expoly::EvenPolynomialPotential::parse(text)};
    return EXPOLY_OK;
  });
}

expoly_status expoly_potential_create(const double* v, size_t count, expoly_potential** out) {
  return guarded([&] {
    EXPOLY_REQUIRE(v && out);
    std::vector<expoly::ExtendedReal> c(v, v + count);
    *out = new expoly_potential{expoly::EvenPolynomialPotential(std::move(c))};
    return EXPOLY_OK;
  });
}

void expoly_potential_free(expoly_potential* pot) { delete pot; }

expoly_status expoly_potential_half_degree(const expoly_potential* pot, int* out) {
  return guarded([&] {
    EXPOLY_REQUIRE(pot && out);
    *out = pot->value.half_degree();
    return EXPOLY_OK;
  });
}

expoly_status expoly_potential_phi(const expoly_potential* pot, double x, double* out) {
  return guarded([&] {
    EXPOLY_REQUIRE(pot && out);
    *out = pot->value.phi(x).to_double();
    return EXPOLY_OK;
  });
}

expoly_status expoly_potential_weight(const expoly_potential* pot, double x, double* out) {
  return guarded([&] {
    EXPOLY_REQUIRE(pot && out);
    *out = pot->value.weight(x).to_double();
    return EXPOLY_OK;
  });
}

expoly_status expoly_quadrature_create(double halfwidth, int panels, expoly_quadrature_kind kind,
                                       expoly_quadrature** out) {
  return guarded([&] {
    EXPOLY_REQUIRE(out);
    EXPOLY_REQUIRE(kind == EXPOLY_QUADRATURE_WEDDLE || kind == EXPOLY_QUADRATURE_NEWTON_COTES7);
    const auto k = kind == EXPOLY_QUADRATURE_WEDDLE ? expoly::QuadratureKind::Weddle
                                                    : expoly::QuadratureKind::NewtonCotes7;
    *out = new expoly_quadrature{expoly::QuadratureRule(halfwidth, panels, k)};
    return EXPOLY_OK;
  });
}

void expoly_quadrature_free(expoly_quadrature* rule) { delete rule; }

expoly_status expoly_quadrature_size(const expoly_quadrature* rule, size_t* out) {
  return guarded([&] {
    EXPOLY_REQUIRE(rule && out);
    *out = rule->value.size();
    return EXPOLY_OK;
  });
}

expoly_status expoly_quadrature_nodes(const expoly_quadrature* rule, double* buf, size_t len) {
  return guarded([&] {
    EXPOLY_REQUIRE(rule && buf);
    const auto nodes = rule->value.nodes();
    for (std::size_t j = 0; j < std::min(len, nodes.size()); ++j) buf[j] = nodes[j].to_double();
    return EXPOLY_OK;
  });
}

expoly_status expoly_quadrature_weights(const expoly_quadrature* rule, double* buf, size_t len) {
  return guarded([&] {
    EXPOLY_REQUIRE(rule && buf);
    const auto w = rule->value.weights();
    for (std::size_t j = 0; j < std::min(len, w.size()); ++j) buf[j] = w[j].to_double();
    return EXPOLY_OK;
  });
}

expoly_status expoly_moments_compute(const expoly_potential* pot, const expoly_quadrature* rule,
                                     expoly_moment_method method, int count, expoly_moments** out) {
  return guarded([&] {
    EXPOLY_REQUIRE(pot && out);
    const auto m = to_method(method);
    expoly::MomentTable table;
    switch (m) {
      case expoly::MomentMethod::Quadrature:
        EXPOLY_REQUIRE(rule);
        table = expoly::moments_quadrature(pot->value, count, rule->value);
        break;
      case expoly::MomentMethod::Recursion:
        EXPOLY_REQUIRE(rule);
        table = expoly::moments_recursion(pot->value, count, rule->value);
        break;
      case expoly::MomentMethod::ClosedFormHermite:
        table = expoly::hermite_moments_closed_form(count);
        break;
    }
    *out = new expoly_moments{std::move(table)};
    return EXPOLY_OK;
  });
}

void expoly_moments_free(expoly_moments* moments) { delete moments; }

expoly_status expoly_moments_count(const expoly_moments* moments, int* out) {
  return guarded([&] {
    EXPOLY_REQUIRE(moments && out);
    *out = static_cast<int>(moments->value.size());
    return EXPOLY_OK;
  });
}

expoly_status expoly_moments_get(const expoly_moments* moments, int k, double* out) {
  return guarded([&] {
    EXPOLY_REQUIRE(moments && out);
    *out = checked_index(moments->value.mu, k).to_double();
    return EXPOLY_OK;
  });
}

expoly_status expoly_moments_get_text(const expoly_moments* moments, int k, char* buf, size_t len) {
  return guarded([&] {
    EXPOLY_REQUIRE(moments);
    return copy_text(expoly::to_string(checked_index(moments->value.mu, k)), buf, len);
  });
}

expoly_status expoly_moments_breakdown_index(const expoly_moments* moments, int* out) {
  return guarded([&] {
    EXPOLY_REQUIRE(moments && out);
    *out = moments->value.breakdown_index.value_or(-1);
    return EXPOLY_OK;
  });
}

expoly_status expoly_recurrence_from_moments(const expoly_moments* moments, int n, int even_path,
                                             expoly_recurrence** out) {
  return guarded([&] {
    EXPOLY_REQUIRE(moments && out);
    *out = new expoly_recurrence{expoly::chebyshev_betas(moments->value, n, even_path != 0)};
    return EXPOLY_OK;
  });
}

expoly_status expoly_recurrence_hermite_exact(int n, expoly_recurrence** out) {
  return guarded([&] {
    EXPOLY_REQUIRE(out);
    *out = new expoly_recurrence{expoly::hermite_exact_coefficients(n)};
    return EXPOLY_OK;
  });
}

void expoly_recurrence_free(expoly_recurrence* rec) { delete rec; }

expoly_status expoly_recurrence_size(const expoly_recurrence* rec, int* out) {
  return guarded([&] {
    EXPOLY_REQUIRE(rec && out);
    *out = rec->value.size();
    return EXPOLY_OK;
  });
}

expoly_status expoly_recurrence_valid_upto(const expoly_recurrence* rec, int* out) {
  return guarded([&] {
    EXPOLY_REQUIRE(rec && out);
    *out = rec->value.valid_upto;
    return EXPOLY_OK;
  });
}

expoly_status expoly_recurrence_beta(const expoly_recurrence* rec, int k, double* out) {
  return guarded([&] {
    EXPOLY_REQUIRE(rec && out);
    *out = checked_index(rec->value.beta, k).to_double();
    return EXPOLY_OK;
  });
}

expoly_status expoly_recurrence_beta_text(const expoly_recurrence* rec, int k, char* buf, size_t len) {
  return guarded([&] {
    EXPOLY_REQUIRE(rec);
    return copy_text(expoly::to_string(checked_index(rec->value.beta, k)), buf, len);
  });
}

expoly_status expoly_recurrence_a(const expoly_recurrence* rec, int k, double* out) {
  return guarded([&] {
    EXPOLY_REQUIRE(rec && out);
    *out = checked_index(rec->value.a, k).to_double();
    return EXPOLY_OK;
  });
}

expoly_status expoly_recurrence_hermite_error(const expoly_recurrence* rec, double* out) {
  return guarded([&] {
    EXPOLY_REQUIRE(rec && out);
    *out = expoly::beta_error_hermite(rec->value).to_double();
    return EXPOLY_OK;
  });
}

expoly_status expoly_basis_eval(const expoly_recurrence* rec, int degree, double x, double* out) {
  return guarded([&] {
    EXPOLY_REQUIRE(rec && out);
    const expoly::ExtendedReal node(x);
    const auto basis = expoly::eval_basis(rec->value, degree, std::span<const expoly::ExtendedReal>(&node, 1));
    for (int n = 0; n <= degree; ++n) out[n] = basis.at(n, 0).to_double();
    return EXPOLY_OK;
  });
}

expoly_status expoly_gram_check(const expoly_potential* pot, const expoly_recurrence* rec, int degree,
                                const expoly_quadrature* rule, double* out) {
  return guarded([&] {
    EXPOLY_REQUIRE(pot && rec && rule && out);
    *out = expoly::gram_check(pot->value, rec->value, degree, rule->value).to_double();
    return EXPOLY_OK;
  });
}

expoly_status expoly_magnus_asymptote(const expoly_potential* pot, int n, double* out) {
  return guarded([&] {
    EXPOLY_REQUIRE(pot && out);
    *out = expoly::magnus_asymptote(pot->value, n).to_double();
    return EXPOLY_OK;
  });
}

expoly_status expoly_ode_residual(const expoly_potential* pot, const expoly_recurrence* rec, int n,
                                  const double* nodes, size_t count, double* out) {
  return guarded([&] {
    EXPOLY_REQUIRE(pot && rec && nodes && out);
    std::vector<expoly::ExtendedReal> xs(nodes, nodes + count);
    *out = expoly::ode_residual(pot->value, rec->value, n, xs).to_double();
    return EXPOLY_OK;
  });
}

expoly_status expoly_detect_n0(const expoly_potential* pot, const expoly_recurrence* rec, int* out) {
  return guarded([&] {
    EXPOLY_REQUIRE(pot && rec && out);
    *out = expoly::detect_N0(pot->value, rec->value).value_or(-1);
    return EXPOLY_OK;
  });
}

expoly_status expoly_projection_errors(const expoly_potential* pot, const expoly_recurrence* rec,
                                       const expoly_quadrature* rule, const char* function_id, int max_degree,
                                       double* errors) {
  return guarded([&] {
    EXPOLY_REQUIRE(pot && rec && rule && function_id && errors);
    const auto f = expoly::test_function(function_id);
    const expoly::Projector projector(pot->value, rec->value, rule->value, max_degree);
    const auto errs = projector.errors(f.value);
    for (const auto& e : errs) errors[e.N] = e.direct.to_double();
    return EXPOLY_OK;
  });
}

expoly_status expoly_convergence_order(const expoly_potential* pot, const expoly_recurrence* rec,
                                       const expoly_quadrature* rule, const char* function_id, int max_degree,
                                       double* order, int* spectral) {
  return guarded([&] {
    EXPOLY_REQUIRE(pot && rec && rule && function_id && order);
    const auto f = expoly::test_function(function_id);
    const expoly::Projector projector(pot->value, rec->value, rule->value, max_degree);
    expoly::FitWindow window;
    window.max_n = std::min(window.max_n, max_degree);
    const auto fit = expoly::convergence_order(projector.errors(f.value), window);
    *order = fit.order;
    if (spectral) *spectral = fit.spectral ? 1 : 0;
    return EXPOLY_OK;
  });
}

expoly_status expoly_poincare_ratio(const expoly_potential* pot, const expoly_quadrature* rule,
                                    const char* function_id, double* out) {
  return guarded([&] {
    EXPOLY_REQUIRE(pot && rule && function_id && out);
    *out = expoly::poincare_ratio(pot->value, rule->value, expoly::test_function(function_id)).to_double();
    return EXPOLY_OK;
  });
}

expoly_status expoly_gamma_sequence(int k, char* buf, size_t len) {
  return guarded([&] { return copy_text(expoly::gamma_sequence(k), buf, len); });
}

expoly_status expoly_config_create(expoly_config** out) {
  return guarded([&] {
    EXPOLY_REQUIRE(out);
    *out = new expoly_config{};
    return EXPOLY_OK;
  });
}

void expoly_config_free(expoly_config* config) { delete config; }

expoly_status expoly_config_set(expoly_config* config, const char* key, const char* value) {
  return guarded([&] {
    EXPOLY_REQUIRE(config && key && value);
    config->value.set(key, value);
    return EXPOLY_OK;
  });
}

expoly_status expoly_config_load_file(expoly_config* config, const char* path) {
  return guarded([&] {
    EXPOLY_REQUIRE(config && path);
    std::ifstream in(path);
    if (!in) return fail(EXPOLY_IO, std::string("cannot read config file ") + path);
    std::ostringstream s;
    s << in.rdbuf();
    expoly::apply_config_text(config->value, s.str());
    return EXPOLY_OK;
  });
}

expoly_status expoly_config_hash(const expoly_config* config, uint64_t* out) {
  return guarded([&] {
    EXPOLY_REQUIRE(config && out);
    *out = config->value.hash();
    return EXPOLY_OK;
  });
}

expoly_status expoly_run(const expoly_config* config, const char* experiment, char* summary, size_t len) {
  return guarded([&] {
    EXPOLY_REQUIRE(config && experiment);
    const std::string text = expoly::run_experiment(config->value, experiment);
    if (summary == nullptr) return EXPOLY_OK;
    return copy_text(text, summary, len);
  });
}

}  // extern "C"
