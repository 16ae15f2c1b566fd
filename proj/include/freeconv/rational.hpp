// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace freeconv {

// Exact rational scalar used throughout the combinatorial layer.
using Rat = mpq_class;
using Int = mpz_class;

// Parses "p", "+p", "-p" or "p/q" with decimal integer parts. Throws
// std::invalid_argument on malformed text or zero denominator.
Rat rat_from_string(const std::string& text);

// Canonical form: "p" when the denominator is 1, otherwise "p/q".
std::string rat_to_string(const Rat& value);

Int factorial(long n);

// Binomial coefficient with the usual boundary convention: 0 when k < 0 or
// k > n. Requires n >= 0.
Int binomial(long n, long k);

// 1/n! extended by 0 for negative n, so sums over shifted factorial
// reciprocals can run over their natural index ranges.
Rat reciprocal_factorial(long n);

// Rising factorial a(a+1)...(a+k-1); empty product for k = 0.
Rat rising_factorial(const Rat& a, long k);

// Falling factorial n(n-1)...(n-k+1); 0 once the product crosses zero.
Int falling_factorial(long n, long k);

Rat pow_rat(const Rat& base, long e);

}  // namespace freeconv
