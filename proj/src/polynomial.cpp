// SPDX-License-Identifier: Apache-2.0
#include "freeconv/polynomial.hpp"

namespace freeconv {

Rat poly_eval(const Poly& p, const Rat& x) {
  Rat acc(0);
  for (size_t i = p.size(); i-- > 0;) {
    acc = acc * x + p[i];
  }
  return acc;
}

double poly_eval(const Poly& p, double x) {
  double acc = 0.0;
  for (size_t i = p.size(); i-- > 0;) {
    acc = acc * x + p[i].get_d();
  }
  return acc;
}

Poly poly_derivative(const Poly& p) {
  if (p.size() <= 1) return {};
  Poly d(p.size() - 1);
  for (size_t k = 1; k < p.size(); ++k) d[k - 1] = Rat(long(k)) * p[k];
  return d;
}

Poly poly_nth_derivative(const Poly& p, int n) {
  Poly d = p;
  for (int i = 0; i < n; ++i) d = poly_derivative(d);
  return d;
}

Poly poly_mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, Rat(0));
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  return r;
}

Poly poly_add(const Poly& a, const Poly& b) {
  Poly r(std::max(a.size(), b.size()), Rat(0));
  for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  return r;
}

Poly poly_scale(const Poly& a, const Rat& c) {
  Poly r = a;
  for (auto& v : r) v *= c;
  return r;
}

long poly_degree(const Poly& p) {
  for (size_t i = p.size(); i-- > 0;) {
    if (p[i] != 0) return static_cast<long>(i);
  }
  return -1;
}

Rat poly_integral(const Poly& p, const Rat& lo, const Rat& hi) {
  Rat acc(0);
  for (size_t k = 0; k < p.size(); ++k) {
    if (p[k] == 0) continue;
    Rat c = p[k] / Rat(long(k + 1));
    acc += c * (pow_rat(hi, long(k + 1)) - pow_rat(lo, long(k + 1)));
  }
  return acc;
}

BivarPoly substitute_linear_form(const Poly& q, const Rat& a, const Rat& b) {
  BivarPoly out;
  for (size_t m = 0; m < q.size(); ++m) {
    if (q[m] == 0) continue;
    for (long i = 0; i <= static_cast<long>(m); ++i) {
      long j = static_cast<long>(m) - i;
      Rat c = q[m] * Rat(binomial(static_cast<long>(m), i)) * pow_rat(a, i) * pow_rat(b, j);
      if (c != 0) out[{i, j}] += c;
    }
  }
  return out;
}

}  // namespace freeconv
