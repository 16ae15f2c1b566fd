// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "freeconv/polynomial.hpp"
#include "freeconv/rational.hpp"

namespace freeconv {

// Divided difference of tabulated values over pairwise distinct nodes,
// via the standard two-point recurrence. Repeated nodes are rejected;
// use divided_difference_power for confluent monomial tables.
Rat divided_difference(const std::vector<Rat>& nodes, const std::vector<Rat>& values);

// Same quantity through the explicit barycentric-style formula
// sum_i f(x_i) / prod_{j != i} (x_i - x_j); kept as an independent route.
Rat divided_difference_explicit(const std::vector<Rat>& nodes, const std::vector<Rat>& values);

// Divided difference of t^n over k+1 nodes, which equals the complete
// homogeneous symmetric polynomial h_{n-k} of the nodes. Valid for
// repeated nodes; 0 when n < k.
Rat divided_difference_power(const std::vector<Rat>& nodes, long n);

// Terminating Gauss sum 2F1(a, -n; c; 1) by direct summation.
Rat hyp2f1_terminating(const Rat& a, long n, const Rat& c);

// Chu-Vandermonde closed form (c-a)^(n) / (c)^(n), used as an oracle.
Rat hyp2f1_chu_vandermonde(const Rat& a, long n, const Rat& c);

// Saalschuetzian terminating series 3F2(a, b, -n; c, 1+a+b-c-n; 1).
Rat hyp3f2_saalschutz(const Rat& a, const Rat& b, long n, const Rat& c);

// Saalschuetz closed form (c-a)^(n) (c-b)^(n) / ((c)^(n) (c-a-b)^(n)).
Rat hyp3f2_saalschutz_closed(const Rat& a, const Rat& b, long n, const Rat& c);

// Gegenbauer(3/2) polynomial normalized to 1 at the right endpoint,
// evaluated through its terminating hypergeometric representation
// 2F1(k+3, -k; 2; (1-x)/2).
Rat gegenbauer_c32(long k, const Rat& x);
double gegenbauer_c32(long k, double x);

// Same family through the three-term recurrence
// (k+2) C_k = (2k+1) x C_{k-1} - (k-1) C_{k-2}; independent route.
Rat gegenbauer_c32_recurrence(long k, const Rat& x);

// Exact coefficient vector of C_k in the monomial basis.
Poly gegenbauer_c32_coeffs(long k);

// Exact L2 pairing integral_{-1}^{1} C_k(x) C_l(x) (1 - x^2) dx.
Rat gegenbauer_weighted_pairing(long k, long l);

// Coefficient of t^k in (1 - 2xt + t^2)^(-3/2) as an exact polynomial in x,
// for checking the generating identity (k+1)(k+2)/2 * C_k coefficientwise.
Poly gegenbauer_generating_coefficient(long k);

// sum_{l >= 0} (2l+1) (-1)^l [n1]_l [n2]_l / ((n1+l+1)! (n2+l+1)!)
// with [n]_l the falling factorial; closes to 1/(n1+n2+1)! by shifted
// Legendre completeness.
Rat shifted_legendre_sum(long n1, long n2);

}  // namespace freeconv
