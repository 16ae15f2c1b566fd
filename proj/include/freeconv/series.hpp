// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "freeconv/rational.hpp"

namespace freeconv {

// Truncated formal power series. coeff[j] multiplies z^j; every operation
// states the truncation order explicitly and the coefficient vector always
// has size order + 1.
struct FormalSeries {
  std::vector<Rat> coeff;

  FormalSeries() = default;
  explicit FormalSeries(long order) : coeff(static_cast<size_t>(order) + 1, Rat(0)) {}

  long order() const { return static_cast<long>(coeff.size()) - 1; }
  const Rat& operator[](long j) const { return coeff[static_cast<size_t>(j)]; }
  Rat& operator[](long j) { return coeff[static_cast<size_t>(j)]; }
};

FormalSeries series_add(const FormalSeries& a, const FormalSeries& b, long order);
FormalSeries series_mul(const FormalSeries& a, const FormalSeries& b, long order);
FormalSeries series_truncate(const FormalSeries& a, long order);

// Multiplicative inverse; requires a nonzero constant term.
FormalSeries series_reciprocal(const FormalSeries& a, long order);

// Compositional inverse g with g(f(z)) = z, computed order by order through
// substitution. Requires f(0) = 0 and a nonzero linear coefficient.
FormalSeries revert_series(const FormalSeries& f);

// g(f(z)) truncated; requires f(0) = 0.
FormalSeries series_compose(const FormalSeries& g, const FormalSeries& f, long order);

// Coefficient [z^m] of f^k for f with f(0) = 0, f'(0) != 0, where k may be
// negative (Laurent expansion); m counts from the true leading exponent k.
Rat series_power_coefficient(const FormalSeries& f, long k, long m);

}  // namespace freeconv
