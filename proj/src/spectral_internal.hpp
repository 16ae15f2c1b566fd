// SPDX-License-Identifier: Apache-2.0
// Shared spectral machinery, internal to the library.
#pragma once

#include <functional>
#include <vector>

#include "freeconv/spectral.hpp"

namespace freeconv {
namespace detail {

// Analytic piece of the b-line for fixed a: between consecutive roots of
// the discriminant of the characteristic polynomial.
struct BCell {
  double lo;
  double hi;
};

// Cells of [0, 1] carrying a nonreal pair, unmerged, so each cell is an
// analytic piece of sigma with at worst square-root endpoint behavior.
std::vector<BCell> embed_active_b_cells(const MeasureEmbedding& emb, double a);

// sum_i |Im lambda_i| / (2 pi) without hull clipping.
double embed_sigma(const MeasureEmbedding& emb, double a, double b);

// Outer composite driver: computes S[k][g] = int a^k G_g(a) da over
// [alo, ahi] under the half-cosine map, doubling the panel count until two
// successive levels agree within tol in every entry. inner(a) returns the
// vector (G_0(a), ..., G_{gdim-1}(a)). cuts lists interior points where the
// integrand is known to lose smoothness (spectrum edges); the domain is
// integrated span by span between them so the endpoint-clustered map sees
// the kinks as edges instead of chasing them by global panel doubling.
std::vector<std::vector<double>> outer_cos_composite(
    double alo, double ahi, long kmax, long gdim,
    const std::function<std::vector<double>(double)>& inner, double tol, const char* what,
    const std::vector<double>& cuts = {});

// Numerical Gegenbauer-component table for a measure embedding:
// result[l][n] ~ int a^n C_l(2b - 1) sigma(a, b) da db, l <= lmax, n <= nmax.
std::vector<std::vector<double>> embed_gegenbauer_table_spectral(const AtomicMeasure& mu,
                                                                 long lmax, long nmax, double tol);

}  // namespace detail
}  // namespace freeconv
