// SPDX-License-Identifier: Apache-2.0
//
// C interface implementation: thin exception-to-status translation over the
// C++ core. All returned strings are malloc-allocated copies so that C
// callers can free them without touching the C++ runtime.

#include "freeconv/freeconv.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "freeconv/comparison.hpp"
#include "freeconv/measure.hpp"
#include "freeconv/measure_io.hpp"
#include "freeconv/moment_cumulant.hpp"
#include "freeconv/quadrature.hpp"
#include "freeconv/rational.hpp"
#include "freeconv/spectral.hpp"
#include "freeconv/verify.hpp"

struct fc_measure {
  freeconv::AtomicMeasure m;
};

namespace {

thread_local std::string g_last_error;

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

// Runs the body and translates exceptions into status codes.
template <typename F>
fc_status guarded(F&& body) {
  try {
    body();
    g_last_error.clear();
    return FC_OK;
  } catch (const freeconv::QuadratureError& e) {
    g_last_error = e.what();
    return FC_ERR_NUMERIC;
  } catch (const std::invalid_argument& e) {
    g_last_error = e.what();
    return FC_ERR_INPUT;
  } catch (const std::out_of_range& e) {
    g_last_error = e.what();
    return FC_ERR_INPUT;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return FC_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown internal failure";
    return FC_ERR_INTERNAL;
  }
}

fc_status require(bool cond, const char* message) {
  if (cond) return FC_OK;
  g_last_error = message;
  return FC_ERR_INPUT;
}

std::string joined_rationals(const std::vector<freeconv::Rat>& v, size_t first) {
  std::ostringstream os;
  for (size_t i = first; i < v.size(); ++i) {
    if (i > first) os << ' ';
    os << freeconv::rat_to_string(v[i]);
  }
  return os.str();
}

}  // namespace

extern "C" {

const char* fc_version(void) { return "1.0.0"; }

const char* fc_last_error(void) { return g_last_error.c_str(); }

void fc_string_free(char* s) { std::free(s); }

fc_status fc_measure_parse_json(const char* json_text, fc_measure** out) {
  if (fc_status st = require(json_text && out, "null argument")) return st;
  *out = nullptr;
  return guarded([&] { *out = new fc_measure{freeconv::measure_from_json(json_text)}; });
}

fc_status fc_measure_create(const char* const* xs, const char* const* ps, size_t n,
                            fc_measure** out) {
  if (fc_status st = require(xs && ps && out && n > 0, "null or empty argument")) return st;
  *out = nullptr;
  return guarded([&] {
    std::vector<freeconv::Rat> points, weights;
    for (size_t i = 0; i < n; ++i) {
      if (!xs[i] || !ps[i]) throw std::invalid_argument("null atom entry");
      points.push_back(freeconv::rat_from_string(xs[i]));
      weights.push_back(freeconv::rat_from_string(ps[i]));
    }
    *out = new fc_measure{freeconv::make_measure(points, weights)};
  });
}

void fc_measure_free(fc_measure* m) { delete m; }

fc_status fc_measure_to_json(const fc_measure* m, char** out) {
  if (fc_status st = require(m && out, "null argument")) return st;
  return guarded([&] { *out = dup_string(freeconv::measure_to_json(m->m)); });
}

fc_status fc_measure_atoms_text(const fc_measure* m, char** out) {
  if (fc_status st = require(m && out, "null argument")) return st;
  return guarded([&] { *out = dup_string(freeconv::atoms_to_text(m->m)); });
}

fc_status fc_measure_moments(const fc_measure* m, long order, char** out) {
  if (fc_status st = require(m && out, "null argument")) return st;
  if (fc_status st = require(order >= 1, "order must be >= 1")) return st;
  return guarded([&] {
    freeconv::MomentVector mv = freeconv::measure_moments(m->m, order);
    *out = dup_string(joined_rationals(mv.entry, 1));
  });
}

fc_status fc_measure_cumulants(const fc_measure* m, long order, char** out) {
  if (fc_status st = require(m && out, "null argument")) return st;
  if (fc_status st = require(order >= 1, "order must be >= 1")) return st;
  return guarded([&] {
    freeconv::CumulantVector kv = freeconv::measure_cumulants(m->m, order);
    *out = dup_string(joined_rationals(kv.entry, 1));
  });
}

fc_status fc_classical_convolve(const fc_measure* mu, const fc_measure* nu, fc_measure** out) {
  if (fc_status st = require(mu && nu && out, "null argument")) return st;
  *out = nullptr;
  return guarded([&] { *out = new fc_measure{freeconv::classical_convolve(mu->m, nu->m)}; });
}

fc_status fc_free_convolve_moments(const fc_measure* mu, const fc_measure* nu, long order,
                                   char** out) {
  if (fc_status st = require(mu && nu && out, "null argument")) return st;
  if (fc_status st = require(order >= 1, "order must be >= 1")) return st;
  return guarded([&] {
    freeconv::MomentVector mv = freeconv::free_convolve_moments(mu->m, nu->m, order);
    *out = dup_string(joined_rationals(mv.entry, 1));
  });
}

fc_status fc_ccm_moment(const fc_measure* mu, const fc_measure* nu, long nmu, long nnu,
                        char** out) {
  if (fc_status st = require(mu && nu && out, "null argument")) return st;
  if (fc_status st = require(nmu >= 0 && nnu >= 0, "moment orders must be >= 0")) return st;
  return guarded([&] {
    freeconv::Rat v = freeconv::ccm_moment_series(mu->m, nu->m, nmu, nnu);
    *out = dup_string(freeconv::rat_to_string(v));
  });
}

fc_status fc_ccm_moments_json(const fc_measure* mu, const fc_measure* nu, long order, char** out) {
  if (fc_status st = require(mu && nu && out, "null argument")) return st;
  if (fc_status st = require(order >= 0, "order must be >= 0")) return st;
  return guarded([&] {
    freeconv::CcmMomentTable table = freeconv::ccm_moment_table(mu->m, nu->m, order);
    *out = dup_string(freeconv::ccm_table_to_json(table));
  });
}

fc_status fc_ccm_grid_csv(const fc_measure* mu, const fc_measure* nu, int na, int nb, double tol,
                          int threads, char** out) {
  if (fc_status st = require(mu && nu && out, "null argument")) return st;
  if (fc_status st = require(na >= 1 && nb >= 1, "grid dimensions must be >= 1")) return st;
  if (fc_status st = require(tol > 0.0, "tolerance must be > 0")) return st;
  return guarded([&] {
    freeconv::DensityGrid grid =
        freeconv::ccm_density_grid(mu->m, nu->m, na, nb, tol, threads <= 0 ? 1 : threads);
    *out = dup_string(freeconv::grid_to_csv(grid, "t_mu,t_nu,w"));
  });
}

fc_status fc_w_density(const fc_measure* mu, const fc_measure* nu, double s, double t, double tol,
                       double* out) {
  if (fc_status st = require(mu && nu && out, "null argument")) return st;
  if (fc_status st = require(tol > 0.0, "tolerance must be > 0")) return st;
  return guarded([&] { *out = freeconv::w_density(mu->m, nu->m, s, t, tol); });
}

fc_status fc_omega_grid_csv(const fc_measure* mu, int na, int nb, char** out) {
  if (fc_status st = require(mu && out, "null argument")) return st;
  if (fc_status st = require(na >= 1 && nb >= 1, "grid dimensions must be >= 1")) return st;
  return guarded([&] {
    freeconv::DensityGrid grid = freeconv::omega_grid(mu->m, na, nb);
    *out = dup_string(freeconv::grid_to_csv(grid, "a,b,omega"));
  });
}

fc_status fc_omega_density(const fc_measure* mu, double a, double b, double* out) {
  if (fc_status st = require(mu && out, "null argument")) return st;
  return guarded([&] {
    freeconv::MeasureEmbedding emb = freeconv::embed_measure(mu->m);
    *out = freeconv::omega_density(emb, a, b);
  });
}

fc_status fc_verify(const char* suite, uint64_t seed, char** report, int* failures) {
  if (fc_status st = require(suite && report && failures, "null argument")) return st;
  return guarded([&] {
    std::ostringstream os;
    freeconv::VerifyReport r = freeconv::run_verify_suite(suite, seed, os);
    *report = dup_string(os.str());
    *failures = r.failures;
  });
}

}  // extern "C"
