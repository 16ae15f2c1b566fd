// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace freeconv {

struct QNode {
  double x;
  double w;
};

// Thrown when a refinement schedule exhausts its budget; carries the best
// available estimate and the last observed refinement gap.
class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, double best, double gap)
      : std::runtime_error(what), best_estimate(best), refinement_gap(gap) {}
  double best_estimate;
  double refinement_gap;
};

// Gauss-Legendre rule on [-1, 1], cached per order.
const std::vector<QNode>& gauss_legendre(int n);

// Nodes/weights mapped onto [lo, hi].
std::vector<QNode> gl_nodes(double lo, double hi, int n);

// Nodes/weights for the half-cosine substitution
// x = lo + (hi - lo) (1 - cos t) / 2 with t Gauss-Legendre on [0, pi].
// Absorbs square-root endpoint behavior of the integrand at both ends.
std::vector<QNode> cos_gl_nodes(double lo, double hi, int n);

double integrate(const std::function<double(double)>& f, const std::vector<QNode>& nodes);

// Piecewise integration with a two-level check per piece and deterministic
// bisection fallback; pieces are integrated with the half-cosine map.
// tol_floor is an absolute accuracy floor below which refinement stops:
// rounding jitter in the integrand makes tighter agreement unattainable,
// and a leftover gap at the floor is negligible for the caller.
double integrate_piece_adaptive(const std::function<double(double)>& f, double lo, double hi,
                                double tol, int depth = 0, double tol_floor = 0.0);

// Truncated cosine expansion q(t) ~ sum_m c_m cos(m t) on [0, pi], built
// from samples at t_j = pi (j + 1/2) / N, j = 0..N-1 (type-II discrete
// cosine transform; no endpoint samples, so q may be an unevaluable 0/0
// limit there). Converges geometrically for q with a smooth even periodic
// extension, and gives the antiderivative in closed form.
class CosineSeries {
 public:
  CosineSeries() = default;
  explicit CosineSeries(const std::vector<double>& samples);
  // integral of the expansion from 0 to t.
  double integral_prefix(double t) const;
  double integral_full() const;

 private:
  std::vector<double> c_;
};

// Real roots of a smooth function on [lo, hi], located by degree-n Chebyshev
// interpolation and the colleague-matrix eigenproblem. Intended for
// polynomial f sampled in floating point; returns sorted roots inside the
// interval.
std::vector<double> chebyshev_real_roots(const std::function<double(double)>& f, double lo,
                                         double hi, int degree);

}  // namespace freeconv
