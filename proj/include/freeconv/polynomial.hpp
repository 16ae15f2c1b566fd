// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <utility>
#include <vector>

#include "freeconv/rational.hpp"

namespace freeconv {

// Dense univariate polynomial with exact coefficients, coeff[k] on t^k.
using Poly = std::vector<Rat>;

// Sparse bivariate polynomial, {i, j} -> coefficient on x^i y^j.
using BivarPoly = std::map<std::pair<long, long>, Rat>;

Rat poly_eval(const Poly& p, const Rat& x);
double poly_eval(const Poly& p, double x);
Poly poly_derivative(const Poly& p);
Poly poly_nth_derivative(const Poly& p, int n);
Poly poly_mul(const Poly& a, const Poly& b);
Poly poly_add(const Poly& a, const Poly& b);
Poly poly_scale(const Poly& a, const Rat& c);
long poly_degree(const Poly& p);  // -1 for the zero polynomial

// Exact integral over [lo, hi].
Rat poly_integral(const Poly& p, const Rat& lo, const Rat& hi);

// Expands q(a x + b y) for univariate q into a bivariate polynomial.
BivarPoly substitute_linear_form(const Poly& q, const Rat& a, const Rat& b);

}  // namespace freeconv
