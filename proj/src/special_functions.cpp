// SPDX-License-Identifier: Apache-2.0
#include "freeconv/special_functions.hpp"

#include <stdexcept>

namespace freeconv {

namespace {

void check_nodes_values(const std::vector<Rat>& nodes, const std::vector<Rat>& values) {
  if (nodes.empty() || nodes.size() != values.size()) {
    throw std::invalid_argument("divided difference needs matching nonempty nodes/values");
  }
  for (size_t i = 0; i < nodes.size(); ++i) {
    for (size_t j = i + 1; j < nodes.size(); ++j) {
      if (nodes[i] == nodes[j]) {
        throw std::invalid_argument(
            "divided_difference requires distinct nodes; for powers with repeated "
            "nodes use divided_difference_power");
      }
    }
  }
}

}  // namespace

Rat divided_difference(const std::vector<Rat>& nodes, const std::vector<Rat>& values) {
  check_nodes_values(nodes, values);
  std::vector<Rat> col = values;
  const size_t n = nodes.size();
  for (size_t level = 1; level < n; ++level) {
    for (size_t i = 0; i + level < n; ++i) {
      col[i] = (col[i + 1] - col[i]) / (nodes[i + level] - nodes[i]);
    }
  }
  return col[0];
}

Rat divided_difference_explicit(const std::vector<Rat>& nodes, const std::vector<Rat>& values) {
  check_nodes_values(nodes, values);
  Rat acc(0);
  for (size_t i = 0; i < nodes.size(); ++i) {
    Rat denom(1);
    for (size_t j = 0; j < nodes.size(); ++j) {
      if (j != i) denom *= nodes[i] - nodes[j];
    }
    acc += values[i] / denom;
  }
  return acc;
}

Rat divided_difference_power(const std::vector<Rat>& nodes, long n) {
  if (nodes.empty()) throw std::invalid_argument("divided_difference_power needs nodes");
  if (n < 0) throw std::invalid_argument("power must be nonnegative");
  const long k = static_cast<long>(nodes.size()) - 1;
  if (n < k) return Rat(0);
  // h_{n-k}(x_0..x_k) by the one-variable-at-a-time recurrence.
  const long deg = n - k;
  std::vector<Rat> h(static_cast<size_t>(deg) + 1, Rat(0));
  h[0] = 1;
  for (const Rat& x : nodes) {
    for (long m = 1; m <= deg; ++m) h[static_cast<size_t>(m)] += x * h[static_cast<size_t>(m - 1)];
  }
  return h[static_cast<size_t>(deg)];
}

Rat hyp2f1_terminating(const Rat& a, long n, const Rat& c) {
  if (n < 0) throw std::invalid_argument("2F1 truncation index must be nonnegative");
  Rat sum(1), term(1);
  for (long j = 0; j < n; ++j) {
    const Rat cj = c + j;
    if (cj == 0) throw std::invalid_argument("2F1 lower parameter hits zero before termination");
    term *= (a + j) * Rat(-(n - j)) / (cj * Rat(j + 1));
    sum += term;
  }
  return sum;
}

Rat hyp2f1_chu_vandermonde(const Rat& a, long n, const Rat& c) {
  Rat denom = rising_factorial(c, n);
  if (denom == 0) throw std::invalid_argument("Chu-Vandermonde form undefined: (c)^(n) = 0");
  return rising_factorial(c - a, n) / denom;
}

Rat hyp3f2_saalschutz(const Rat& a, const Rat& b, long n, const Rat& c) {
  if (n < 0) throw std::invalid_argument("3F2 truncation index must be nonnegative");
  const Rat d = Rat(1) + a + b - c - Rat(n);
  Rat sum(1), term(1);
  for (long j = 0; j < n; ++j) {
    const Rat cj = c + j;
    const Rat dj = d + j;
    if (cj == 0 || dj == 0) {
      throw std::invalid_argument("3F2 lower parameter hits zero before termination");
    }
    term *= (a + j) * (b + j) * Rat(-(n - j)) / (cj * dj * Rat(j + 1));
    sum += term;
  }
  return sum;
}

Rat hyp3f2_saalschutz_closed(const Rat& a, const Rat& b, long n, const Rat& c) {
  Rat denom = rising_factorial(c, n) * rising_factorial(c - a - b, n);
  if (denom == 0) throw std::invalid_argument("Saalschuetz form undefined: zero denominator");
  return rising_factorial(c - a, n) * rising_factorial(c - b, n) / denom;
}

Rat gegenbauer_c32(long k, const Rat& x) {
  if (k < 0) throw std::invalid_argument("Gegenbauer index must be nonnegative");
  const Rat u = (Rat(1) - x) / 2;
  Rat sum(1), term(1);
  for (long j = 0; j < k; ++j) {
    term *= Rat(k + 3 + j) * Rat(-(k - j)) * u / (Rat(2 + j) * Rat(j + 1));
    sum += term;
  }
  return sum;
}

double gegenbauer_c32(long k, double x) {
  if (k < 0) throw std::invalid_argument("Gegenbauer index must be nonnegative");
  if (k == 0) return 1.0;
  double prev = 1.0, cur = x;
  for (long j = 2; j <= k; ++j) {
    double next = ((2 * j + 1) * x * cur - (j - 1) * prev) / (j + 2);
    prev = cur;
    cur = next;
  }
  return cur;
}

Rat gegenbauer_c32_recurrence(long k, const Rat& x) {
  if (k < 0) throw std::invalid_argument("Gegenbauer index must be nonnegative");
  Rat prev(1);
  if (k == 0) return prev;
  Rat cur = x;
  for (long j = 2; j <= k; ++j) {
    Rat next = (Rat(2 * j + 1) * x * cur - Rat(j - 1) * prev) / Rat(j + 2);
    prev = cur;
    cur = next;
  }
  return cur;
}

Poly gegenbauer_c32_coeffs(long k) {
  if (k < 0) throw std::invalid_argument("Gegenbauer index must be nonnegative");
  // Expand the hypergeometric form in powers of u = (1-x)/2.
  Poly u = {Rat(1, 2), Rat(-1, 2)};
  Poly upow = {Rat(1)};
  Poly out = {Rat(1)};
  Rat r(1);
  for (long j = 0; j < k; ++j) {
    r *= Rat(k + 3 + j) * Rat(-(k - j)) / (Rat(2 + j) * Rat(j + 1));
    upow = poly_mul(upow, u);
    out = poly_add(out, poly_scale(upow, r));
  }
  return out;
}

Rat gegenbauer_weighted_pairing(long k, long l) {
  Poly prod = poly_mul(gegenbauer_c32_coeffs(k), gegenbauer_c32_coeffs(l));
  Poly weight = {Rat(1), Rat(0), Rat(-1)};
  return poly_integral(poly_mul(prod, weight), Rat(-1), Rat(1));
}

Poly gegenbauer_generating_coefficient(long k) {
  if (k < 0) throw std::invalid_argument("index must be nonnegative");
  // [t^k] (1 - (2xt - t^2))^{-3/2}
  //   = sum_m binom(-3/2, m) (-1)^m [t^k] (2xt - t^2)^m
  //   = sum_m binom(-3/2, m) (-1)^m C(m, k-m) (2x)^{2m-k} (-1)^{k-m}.
  Poly out(static_cast<size_t>(k) + 1, Rat(0));
  for (long m = (k + 1) / 2; m <= k; ++m) {
    // binom(-3/2, m)
    Rat bin(1);
    for (long i = 0; i < m; ++i) bin *= (Rat(-3, 2) - i) / Rat(i + 1);
    Rat c = bin * Rat(binomial(m, k - m)) * pow_rat(Rat(2), 2 * m - k);
    if ((k % 2) != 0) c = -c;  // (-1)^m (-1)^{k-m} = (-1)^k
    out[static_cast<size_t>(2 * m - k)] += c;
  }
  return out;
}

Rat shifted_legendre_sum(long n1, long n2) {
  if (n1 < 0 || n2 < 0) throw std::invalid_argument("indices must be nonnegative");
  Rat acc(0);
  const long top = std::min(n1, n2);
  for (long l = 0; l <= top; ++l) {
    Rat term = Rat(2 * l + 1) * Rat(falling_factorial(n1, l)) * Rat(falling_factorial(n2, l)) *
               reciprocal_factorial(n1 + l + 1) * reciprocal_factorial(n2 + l + 1);
    if (l % 2 != 0) term = -term;
    acc += term;
  }
  return acc;
}

}  // namespace freeconv
