// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "freeconv/measure.hpp"
#include "freeconv/polynomial.hpp"
#include "freeconv/rational.hpp"
#include "freeconv/spectral.hpp"

namespace freeconv {

// Component functional I_l applied to t^n, exact rational. Vanishes for
// n < l. Computed from moment composition sums:
//   I_l(t^n) = n! / ((n+l+3)! (n-l)!) *
//              sum_{k=1}^{l+2} (-1)^(k-1) ((n-k+2)!/k!) ((l+k)!/(l-k+2)!) M_{n+2,k}.
Rat i_functional(const AtomicMeasure& mu, long l, long n);

// Same value from free-cumulant composition sums, an independent route:
//   sum_{k>=1} ((n+2-k)! / ((n-k-l+1)! (n-k+l+4)!)) (n!/k!) K_{n+2,k}.
Rat i_functional_cumulant_route(const AtomicMeasure& mu, long l, long n);

// Exact table, value[l][n] for l <= lmax, n <= nmax.
std::vector<std::vector<Rat>> i_functional_table(const AtomicMeasure& mu, long lmax, long nmax);

// Numerical route: I_l(t^n) = int a^n C_l(2b - 1) omega(a, b) da db over the
// diagonal-plus-rank-one embedding of mu, by adaptive quadrature.
double i_functional_spectral(const AtomicMeasure& mu, long l, long n, double tol);
std::vector<std::vector<double>> i_functional_spectral_table(const AtomicMeasure& mu, long lmax,
                                                             long nmax, double tol);

// Monomial moments of the convolution comparison measure,
// m(x^nmu y^nnu), exact. Series route:
//   sum_{l=0}^{min(nmu,nnu)} (-1)^l (2l+3) I_l^mu(t^nmu) I_l^nu(t^nnu).
Rat ccm_moment_series(const AtomicMeasure& mu, const AtomicMeasure& nu, long nmu, long nnu);

// Independent route via cumulant differences:
//   sum_{kmu,knu>=1} (nmu! nnu! / (kmu! knu!))
//     [ 1/((nmu+3-kmu)! (nnu+3-knu)!) - 1/((nmu+nnu+5-kmu-knu)!) ]
//     K_{nmu+2,kmu}(mu) K_{nnu+2,knu}(nu).
Rat ccm_moment_via_cumulant_difference(const AtomicMeasure& mu, const AtomicMeasure& nu, long nmu,
                              long nnu);

// All monomial moments with nmu + nnu <= order.
struct CcmMomentTable {
  long order = 0;
  std::vector<std::vector<Rat>> value;  // value[nmu][nnu], zero beyond the diagonal
};
CcmMomentTable ccm_moment_table(const AtomicMeasure& mu, const AtomicMeasure& nu, long order);

// Pairing of the table with sum c_ij x^i y^j; throws if a monomial exceeds
// the table order.
Rat ccm_apply(const CcmMomentTable& table, const BivarPoly& q);

// Pairing of the comparison measure with p''''(a x + b y), scaled by a^2 b^2
// so that it equals the convolution gap below.
Rat apply_ccm_to_shifted_poly(const AtomicMeasure& mu, const AtomicMeasure& nu, const Poly& p,
                              const Rat& a, const Rat& b);

// int p d(a mu * b nu) - int p d(a mu [+] b nu), exact. The classical side
// is expanded atom by atom, the free side through cumulant additivity.
Rat convolution_gap(const AtomicMeasure& mu, const AtomicMeasure& nu, const Poly& p,
                    const Rat& a, const Rat& b);

// Limit functional of the small-second-measure expansion:
//   I(f) = E f''(X) - E [X, X']_{f'}  (X, X' independent copies),
// the divided difference taken with coincident-node limits. For f = t^4 this
// is exactly 4 Var.
Rat leading_order_functional(const AtomicMeasure& mu, const Poly& f);

// Pointwise density of the comparison measure at (s, t):
//   w(s, t) = int int min( 1/((1-p)(1-q)), 1/(p q) )
//             omega_mu(s, p) omega_nu(t, q) dp dq,
// evaluated by caching the inner antiderivatives as Chebyshev expansions on
// adaptive leaves per analytic cell and integrating the outer variable
// piecewise, split at every leaf edge.
double w_density(const AtomicMeasure& mu, const AtomicMeasure& nu, double s, double t,
                 double tol);

// Cell-center sample of w on the product of support hulls. Inner profiles
// are cached per column; rows are distributed over threads.
DensityGrid ccm_density_grid(const AtomicMeasure& mu, const AtomicMeasure& nu, int na, int nb,
                             double tol, int threads = 1);

}  // namespace freeconv
