// SPDX-License-Identifier: Apache-2.0
#include "freeconv/moment_cumulant.hpp"

#include <stdexcept>

namespace freeconv {

namespace {

void check_order(long order) {
  if (order < 0) throw std::invalid_argument("truncation order must be nonnegative");
}

}  // namespace

MomentVector measure_moments(const AtomicMeasure& mu, long order) {
  check_order(order);
  return MomentVector{order, mu.raw_moments(order)};
}

FormalSeries psi_series(const MomentVector& m) {
  FormalSeries f(m.order + 1);
  for (long k = 0; k <= m.order; ++k) f[k + 1] = m.entry[static_cast<size_t>(k)];
  return f;
}

std::vector<std::vector<Rat>> composition_sum_table(const std::vector<Rat>& seq, long order) {
  check_order(order);
  if (static_cast<long>(seq.size()) <= order) {
    throw std::invalid_argument("sequence too short for requested order");
  }
  // table[n][k] = sum over compositions of n into k positive parts of the
  // products of seq values; built from the first-part recursion.
  std::vector<std::vector<Rat>> table(static_cast<size_t>(order) + 1);
  for (long n = 0; n <= order; ++n) table[static_cast<size_t>(n)].assign(static_cast<size_t>(n) + 1, Rat(0));
  for (long n = 1; n <= order; ++n) {
    table[static_cast<size_t>(n)][1] = seq[static_cast<size_t>(n)];
    for (long k = 2; k <= n; ++k) {
      Rat acc(0);
      for (long i = 1; i <= n - k + 1; ++i) {
        acc += seq[static_cast<size_t>(i)] * table[static_cast<size_t>(n - i)][static_cast<size_t>(k - 1)];
      }
      table[static_cast<size_t>(n)][static_cast<size_t>(k)] = acc;
    }
  }
  return table;
}

Rat composition_sum(const std::vector<Rat>& seq, long n, long k) {
  if (n < 1 || k < 1) throw std::invalid_argument("composition_sum requires n, k >= 1");
  if (k > n) return Rat(0);
  return composition_sum_table(seq, n)[static_cast<size_t>(n)][static_cast<size_t>(k)];
}

Rat moment_sum_from_cumulant_sums(const std::vector<std::vector<Rat>>& ktable, long n, long k) {
  if (n < 1 || k < 1 || k > n) throw std::invalid_argument("need 1 <= k <= n");
  Rat acc(0);
  for (long r = k; r <= n; ++r) {
    Rat coef = Rat(k) / Rat(r) * Rat(binomial(n, r - k));
    acc += coef * ktable[static_cast<size_t>(n)][static_cast<size_t>(r)];
  }
  return acc;
}

Rat cumulant_sum_from_moment_sums(const std::vector<std::vector<Rat>>& mtable, long n, long k) {
  if (n < 1 || k < 1 || k > n) throw std::invalid_argument("need 1 <= k <= n");
  Rat acc(0);
  for (long r = k; r <= n; ++r) {
    Rat coef = Rat(k) / Rat(r) * Rat(binomial(n + r - k - 1, r - k));
    if ((r - k) % 2 != 0) coef = -coef;
    acc += coef * mtable[static_cast<size_t>(n)][static_cast<size_t>(r)];
  }
  return acc;
}

CumulantVector cumulants_from_moments(const MomentVector& m) {
  const long order = m.order;
  CumulantVector out{order, std::vector<Rat>(static_cast<size_t>(order) + 1, Rat(0))};
  if (order == 0) return out;
  // psi^{-1}(z) = z / (1 + sum kappa_k z^k): revert psi, then divide z by it.
  FormalSeries inv = revert_series(psi_series(m));
  FormalSeries unit(order);
  for (long j = 0; j <= order; ++j) unit[j] = inv[j + 1];
  FormalSeries rec = series_reciprocal(unit, order);
  for (long k = 1; k <= order; ++k) out.entry[static_cast<size_t>(k)] = rec[k];
  return out;
}

MomentVector moments_from_cumulants(const CumulantVector& k) {
  const long order = k.order;
  MomentVector out{order, std::vector<Rat>(static_cast<size_t>(order) + 1, Rat(0))};
  out.entry[0] = 1;
  if (order == 0) return out;
  // m_n is the k = 1 row of the cumulant-to-moment transform.
  auto ktable = composition_sum_table(k.entry, order);
  for (long n = 1; n <= order; ++n) {
    out.entry[static_cast<size_t>(n)] = moment_sum_from_cumulant_sums(ktable, n, 1);
  }
  return out;
}

CumulantVector measure_cumulants(const AtomicMeasure& mu, long order) {
  return cumulants_from_moments(measure_moments(mu, order));
}

namespace {

// Sum of prod kappa_{|B|} over non-crossing partitions of an interval of
// length len. The block of the leftmost element is chosen explicitly (its
// size s and the gap lengths between consecutive block elements), and each
// gap is partitioned recursively; no memoization, every partition is walked
// once.
Rat nc_interval_sum(long len, const std::vector<Rat>& kappa) {
  if (len == 0) return Rat(1);
  Rat total(0);
  std::vector<long> gaps;
  for (long s = 1; s <= len; ++s) {
    const long rest = len - s;
    gaps.assign(static_cast<size_t>(s), 0);
    // Enumerate ordered tuples (g_1..g_s) of nonnegative gaps summing to
    // rest, in colex order via manual odometer.
    gaps[static_cast<size_t>(s) - 1] = rest;
    while (true) {
      Rat prod = kappa[static_cast<size_t>(s)];
      for (long g : gaps) {
        if (prod == 0) break;
        prod *= nc_interval_sum(g, kappa);
      }
      total += prod;
      // next composition: move one unit left of the last nonzero tail
      long i = s - 1;
      while (i >= 0 && gaps[static_cast<size_t>(i)] == 0) --i;
      if (i <= 0) break;
      const long tail = gaps[static_cast<size_t>(i)];
      gaps[static_cast<size_t>(i)] = 0;
      gaps[static_cast<size_t>(i - 1)] += 1;
      gaps[static_cast<size_t>(s) - 1] = tail - 1;
    }
  }
  return total;
}

}  // namespace

MomentVector nc_moments_from_cumulants(const CumulantVector& k) {
  const long order = k.order;
  if (order > 14) {
    throw std::invalid_argument("non-crossing enumeration capped at order 14");
  }
  MomentVector out{order, std::vector<Rat>(static_cast<size_t>(order) + 1, Rat(0))};
  out.entry[0] = 1;
  for (long n = 1; n <= order; ++n) {
    out.entry[static_cast<size_t>(n)] = nc_interval_sum(n, k.entry);
  }
  return out;
}

CumulantVector add_cumulants(const CumulantVector& a, const CumulantVector& b) {
  if (a.order != b.order) throw std::invalid_argument("cumulant orders differ");
  CumulantVector out = a;
  for (long k = 1; k <= a.order; ++k) out.entry[static_cast<size_t>(k)] += b.entry[static_cast<size_t>(k)];
  return out;
}

CumulantVector scale_cumulants(const CumulantVector& k, const Rat& c) {
  CumulantVector out = k;
  Rat cp(1);
  for (long j = 1; j <= k.order; ++j) {
    cp *= c;
    out.entry[static_cast<size_t>(j)] *= cp;
  }
  return out;
}

MomentVector free_convolve_moments(const AtomicMeasure& mu, const AtomicMeasure& nu, long order) {
  check_order(order);
  CumulantVector sum = add_cumulants(measure_cumulants(mu, order), measure_cumulants(nu, order));
  return moments_from_cumulants(sum);
}

std::vector<Rat> mixed_free_symmetric_moments(const AtomicMeasure& mu, const AtomicMeasure& nu, long n) {
  if (n < 0) throw std::invalid_argument("degree must be nonnegative");
  const long dim = n + 1;
  // m_n(t.mu boxplus nu) is a polynomial of degree n in t whose t^k
  // coefficient is C(n,k) E[sym a^k b^{n-k}]; sample at t = 1..n+1 and solve.
  CumulantVector kmu = measure_cumulants(mu, n);
  CumulantVector knu = measure_cumulants(nu, n);
  std::vector<std::vector<Rat>> mat(static_cast<size_t>(dim), std::vector<Rat>(static_cast<size_t>(dim) + 1, Rat(0)));
  for (long row = 0; row < dim; ++row) {
    const Rat t(row + 1);
    CumulantVector mixed = add_cumulants(scale_cumulants(kmu, t), knu);
    Rat value = moments_from_cumulants(mixed).entry[static_cast<size_t>(n)];
    Rat tp(1);
    for (long col = 0; col < dim; ++col) {
      mat[static_cast<size_t>(row)][static_cast<size_t>(col)] = tp;
      tp *= t;
    }
    mat[static_cast<size_t>(row)][static_cast<size_t>(dim)] = value;
  }
  // Exact Gaussian elimination.
  for (long col = 0; col < dim; ++col) {
    long pivot = -1;
    for (long row = col; row < dim; ++row) {
      if (mat[static_cast<size_t>(row)][static_cast<size_t>(col)] != 0) {
        pivot = row;
        break;
      }
    }
    if (pivot < 0) throw std::runtime_error("singular Vandermonde system");
    std::swap(mat[static_cast<size_t>(col)], mat[static_cast<size_t>(pivot)]);
    const Rat inv = 1 / mat[static_cast<size_t>(col)][static_cast<size_t>(col)];
    for (long j = col; j <= dim; ++j) mat[static_cast<size_t>(col)][static_cast<size_t>(j)] *= inv;
    for (long row = 0; row < dim; ++row) {
      if (row == col) continue;
      const Rat f = mat[static_cast<size_t>(row)][static_cast<size_t>(col)];
      if (f == 0) continue;
      for (long j = col; j <= dim; ++j) {
        mat[static_cast<size_t>(row)][static_cast<size_t>(j)] -= f * mat[static_cast<size_t>(col)][static_cast<size_t>(j)];
      }
    }
  }
  std::vector<Rat> out(static_cast<size_t>(dim));
  for (long k = 0; k < dim; ++k) {
    out[static_cast<size_t>(k)] = mat[static_cast<size_t>(k)][static_cast<size_t>(dim)] / Rat(binomial(n, k));
  }
  return out;
}

}  // namespace freeconv
