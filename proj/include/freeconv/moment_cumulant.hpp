// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "freeconv/measure.hpp"
#include "freeconv/rational.hpp"
#include "freeconv/series.hpp"

namespace freeconv {

// Moment sequence with explicit truncation order; entry[k] = m_k for
// k = 0..order and entry[0] = 1.
struct MomentVector {
  long order = 0;
  std::vector<Rat> entry;
};

// Free cumulant sequence; entry[k] = kappa_k for k = 1..order, entry[0] = 0.
struct CumulantVector {
  long order = 0;
  std::vector<Rat> entry;
};

MomentVector measure_moments(const AtomicMeasure& mu, long order);

// psi_mu(z) = sum_{k >= 0} m_k z^{k+1}, truncated at z^{order + 1}.
FormalSeries psi_series(const MomentVector& m);

// Composition sums: sum over ordered tuples (i_1, ..., i_k) of strictly
// positive integers with i_1 + ... + i_k = n of seq[i_1] ... seq[i_k].
// seq is indexed from 1 (index 0 ignored). Result table[n][k], 1 <= k <= n.
std::vector<std::vector<Rat>> composition_sum_table(const std::vector<Rat>& seq, long order);
Rat composition_sum(const std::vector<Rat>& seq, long n, long k);

// The triangular transforms connecting moment and cumulant composition
// sums:
//   M_{n,k} = sum_{r=k}^{n} (k/r) C(n, r-k) K_{n,r}
//   K_{n,k} = sum_{r=k}^{n} (-1)^{r-k} (k/r) C(n+r-k-1, r-k) M_{n,r}
Rat moment_sum_from_cumulant_sums(const std::vector<std::vector<Rat>>& ktable, long n, long k);
Rat cumulant_sum_from_moment_sums(const std::vector<std::vector<Rat>>& mtable, long n, long k);

// Free cumulants through series reversion of psi; agrees exactly with the
// k = 1 row of cumulant_sum_from_moment_sums.
CumulantVector cumulants_from_moments(const MomentVector& m);
MomentVector moments_from_cumulants(const CumulantVector& k);

CumulantVector measure_cumulants(const AtomicMeasure& mu, long order);

// Oracle route: m_n = sum over non-crossing partitions of [n] of the
// product of kappa_{|block|}, by explicit enumeration. Exponential in n;
// refuses n > 14.
MomentVector nc_moments_from_cumulants(const CumulantVector& k);

// Moments of the free additive convolution, via cumulant additivity.
MomentVector free_convolve_moments(const AtomicMeasure& mu, const AtomicMeasure& nu, long order);
CumulantVector add_cumulants(const CumulantVector& a, const CumulantVector& b);
CumulantVector scale_cumulants(const CumulantVector& k, const Rat& c);

// Free mixed moments of the symmetrized monomials: entry k of the result is
// the trace of the average over all orderings of a^k b^{n-k} words, for a, b
// free with laws mu, nu. Recovered exactly from m_n(t.mu boxplus nu) at the
// integer nodes t = 1..n+1 through a Vandermonde solve.
std::vector<Rat> mixed_free_symmetric_moments(const AtomicMeasure& mu, const AtomicMeasure& nu, long n);

}  // namespace freeconv
