// SPDX-License-Identifier: Apache-2.0
#include "freeconv/series.hpp"

#include <stdexcept>

namespace freeconv {

FormalSeries series_truncate(const FormalSeries& a, long order) {
  FormalSeries r(order);
  const long n = std::min(order, a.order());
  for (long j = 0; j <= n; ++j) r[j] = a[j];
  return r;
}

FormalSeries series_add(const FormalSeries& a, const FormalSeries& b, long order) {
  FormalSeries r(order);
  for (long j = 0; j <= order; ++j) {
    if (j <= a.order()) r[j] += a[j];
    if (j <= b.order()) r[j] += b[j];
  }
  return r;
}

FormalSeries series_mul(const FormalSeries& a, const FormalSeries& b, long order) {
  FormalSeries r(order);
  const long na = std::min(order, a.order());
  for (long i = 0; i <= na; ++i) {
    if (a[i] == 0) continue;
    const long nb = std::min(order - i, b.order());
    for (long j = 0; j <= nb; ++j) {
      if (b[j] == 0) continue;
      r[i + j] += a[i] * b[j];
    }
  }
  return r;
}

FormalSeries series_reciprocal(const FormalSeries& a, long order) {
  if (a.order() < 0 || a[0] == 0) {
    throw std::invalid_argument("series_reciprocal requires a nonzero constant term");
  }
  FormalSeries r(order);
  r[0] = 1 / a[0];
  for (long n = 1; n <= order; ++n) {
    Rat acc(0);
    const long top = std::min(n, a.order());
    for (long i = 1; i <= top; ++i) acc += a[i] * r[n - i];
    r[n] = -acc / a[0];
  }
  return r;
}

FormalSeries series_compose(const FormalSeries& g, const FormalSeries& f, long order) {
  if (f.order() >= 0 && f[0] != 0) {
    throw std::invalid_argument("series_compose requires f(0) = 0");
  }
  FormalSeries acc(order);
  if (g.order() >= 0) acc[0] = g[0];
  FormalSeries fpow(order);
  fpow[0] = 1;
  const long top = std::min(order, g.order());
  for (long k = 1; k <= top; ++k) {
    fpow = series_mul(fpow, f, order);
    if (g[k] == 0) continue;
    for (long j = 0; j <= order; ++j) acc[j] += g[k] * fpow[j];
  }
  return acc;
}

FormalSeries revert_series(const FormalSeries& f) {
  const long order = f.order();
  if (order < 1 || f[0] != 0 || f[1] == 0) {
    throw std::invalid_argument("revert_series requires f(0) = 0 and f'(0) != 0");
  }
  FormalSeries g(order);
  g[1] = 1 / f[1];
  // Maintain powers of f and fix one coefficient of g per order via the
  // requirement [z^n] g(f(z)) = [n == 1].
  std::vector<FormalSeries> fpow(static_cast<size_t>(order) + 1, FormalSeries(order));
  fpow[0][0] = 1;
  for (long k = 1; k <= order; ++k) fpow[static_cast<size_t>(k)] = series_mul(fpow[static_cast<size_t>(k - 1)], f, order);
  const Rat c1 = f[1];
  Rat c1n = c1;  // c1^n
  for (long n = 2; n <= order; ++n) {
    c1n *= c1;
    Rat acc(0);
    for (long k = 1; k < n; ++k) acc += g[k] * fpow[static_cast<size_t>(k)][n];
    g[n] = -acc / c1n;
  }
  return g;
}

Rat series_power_coefficient(const FormalSeries& f, long k, long m) {
  const long order = f.order();
  if (order < 1 || f[0] != 0 || f[1] == 0) {
    throw std::invalid_argument("series_power_coefficient requires f(0) = 0, f'(0) != 0");
  }
  if (m < 0) return Rat(0);
  // f^k = z^k u^k with u = f/z a unit; [z^{k+m}] f^k = [z^m] u^k.
  FormalSeries u(order - 1);
  for (long j = 0; j <= order - 1; ++j) u[j] = f[j + 1];
  if (m > u.order()) throw std::invalid_argument("series_power_coefficient: order too small");
  FormalSeries upow(u.order());
  upow[0] = 1;
  long e = k;
  FormalSeries base = u;
  if (e < 0) {
    base = series_reciprocal(u, u.order());
    e = -e;
  }
  while (e > 0) {
    if (e & 1) upow = series_mul(upow, base, u.order());
    base = series_mul(base, base, u.order());
    e >>= 1;
  }
  return upow[m];
}

}  // namespace freeconv
