// SPDX-License-Identifier: Apache-2.0
#include "freeconv/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace freeconv {

namespace {

bool is_integer_token(const std::string& s) {
  if (s.empty()) return false;
  size_t i = (s[0] == '+' || s[0] == '-') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

}  // namespace

Rat rat_from_string(const std::string& text) {
  const auto slash = text.find('/');
  std::string num = (slash == std::string::npos) ? text : text.substr(0, slash);
  std::string den = (slash == std::string::npos) ? "1" : text.substr(slash + 1);
  if (!is_integer_token(num) || !is_integer_token(den)) {
    throw std::invalid_argument("not a rational literal: '" + text + "'");
  }
  // The integer constructor below accepts a leading '-' but not a '+'.
  if (num[0] == '+') num.erase(0, 1);
  if (den[0] == '+') den.erase(0, 1);
  Int p(num), q(den);
  if (q == 0) {
    throw std::invalid_argument("zero denominator in rational literal: '" + text + "'");
  }
  Rat r(p, q);
  r.canonicalize();
  return r;
}

std::string rat_to_string(const Rat& value) {
  // Callers may hand in two-argument-constructed values that were never
  // canonicalized; the printed form must still be reduced with the sign on
  // the numerator.
  Rat c(value);
  c.canonicalize();
  return c.get_str();
}

Int factorial(long n) {
  if (n < 0) throw std::invalid_argument("factorial of negative argument");
  Int f;
  mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
  return f;
}

Int binomial(long n, long k) {
  if (n < 0) throw std::invalid_argument("binomial requires n >= 0");
  if (k < 0 || k > n) return 0;
  Int b;
  mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return b;
}

Rat reciprocal_factorial(long n) {
  if (n < 0) return Rat(0);
  Rat r(Int(1), factorial(n));
  r.canonicalize();
  return r;
}

Rat rising_factorial(const Rat& a, long k) {
  if (k < 0) throw std::invalid_argument("rising_factorial requires k >= 0");
  Rat prod(1);
  Rat term(a);
  for (long i = 0; i < k; ++i) {
    prod *= term;
    term += 1;
  }
  return prod;
}

Int falling_factorial(long n, long k) {
  if (k < 0) throw std::invalid_argument("falling_factorial requires k >= 0");
  Int prod(1);
  for (long i = 0; i < k; ++i) {
    prod *= Int(n - i);
    if (prod == 0) break;
  }
  return prod;
}

Rat pow_rat(const Rat& base, long e) {
  if (e < 0) {
    if (base == 0) throw std::invalid_argument("pow_rat: negative power of zero");
    return 1 / pow_rat(base, -e);
  }
  Rat acc(1), b(base);
  long k = e;
  while (k > 0) {
    if (k & 1) acc *= b;
    b *= b;
    k >>= 1;
  }
  return acc;
}

}  // namespace freeconv
