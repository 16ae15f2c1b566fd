// SPDX-License-Identifier: Apache-2.0
//
// Unit tests for divided differences, terminating hypergeometric sums, and
// the Gegenbauer(3/2) family.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>
#include <stdexcept>
#include <vector>

#include "freeconv/polynomial.hpp"
#include "freeconv/special_functions.hpp"
#include "test_util.hpp"

using namespace freeconv;

TEST_CASE("divided differences: recurrence, explicit formula, and power route") {
  testutil::Rng rng(101);
  for (int i = 0; i < 40; ++i) {
    long m = rng.range(2, 5);
    std::set<Rat> node_set;
    while (static_cast<long>(node_set.size()) < m) node_set.insert(rng.rat(6, 3));
    std::vector<Rat> nodes(node_set.begin(), node_set.end());

    // Against a random polynomial's values.
    long deg = rng.range(0, 6);
    Poly p(static_cast<size_t>(deg) + 1, Rat(0));
    for (long j = 0; j <= deg; ++j) p[static_cast<size_t>(j)] = rng.rat(4, 3);
    std::vector<Rat> values;
    for (const auto& x : nodes) values.push_back(poly_eval(p, x));

    Rat lhs = divided_difference(nodes, values);
    CHECK(lhs == divided_difference_explicit(nodes, values));

    // Power route must match the generic routes term by term.
    long n = rng.range(0, 8);
    std::vector<Rat> powers;
    for (const auto& x : nodes) powers.push_back(pow_rat(x, n));
    CHECK(divided_difference_power(nodes, n) == divided_difference(nodes, powers));
  }
}

TEST_CASE("divided difference of a power handles repeated nodes") {
  // All nodes equal x: the divided difference over k+1 copies is the k-th
  // Taylor coefficient n choose k times x^(n-k).
  for (long n = 0; n <= 6; ++n) {
    for (long k = 0; k <= 4; ++k) {
      std::vector<Rat> nodes(static_cast<size_t>(k) + 1, Rat(3, 2));
      Rat expect = (n >= k) ? Rat(binomial(n, k)) * pow_rat(Rat(3, 2), n - k) : Rat(0);
      CHECK(divided_difference_power(nodes, n) == expect);
    }
  }
  // Distinct-node routes refuse coincident nodes.
  CHECK_THROWS_AS(divided_difference({Rat(1), Rat(1)}, {Rat(0), Rat(0)}),
                  std::invalid_argument);
}

TEST_CASE("vanishing-order law: divided difference of t^n over n+2 nodes is zero") {
  testutil::Rng rng(103);
  for (int i = 0; i < 20; ++i) {
    long n = rng.range(0, 6);
    std::vector<Rat> nodes;
    for (long j = 0; j < n + 2; ++j) nodes.push_back(rng.rat(5, 2));
    CHECK(divided_difference_power(nodes, n) == Rat(0));
  }
}

TEST_CASE("terminating Gauss sum closes to the ratio of rising factorials") {
  testutil::Rng rng(107);
  for (int i = 0; i < 120; ++i) {
    Rat a = rng.rat(9, 4);
    long n = rng.range(0, 12);
    // c must avoid nonpositive integers reachable by the rising factorials.
    Rat c(rng.range(1, 60), rng.range(2, 5));
    c.canonicalize();
    if (c.get_den() == 1) c += Rat(1, 3);
    CHECK(hyp2f1_terminating(a, n, c) == hyp2f1_chu_vandermonde(a, n, c));
  }
}

TEST_CASE("balanced 3F2 sum closes to the two-ratio product form") {
  testutil::Rng rng(109);
  for (int i = 0; i < 120; ++i) {
    Rat a(2 * rng.range(-6, 6) + 1, 2);   // half-integers keep denominators off zero
    Rat b(5 * rng.range(-4, 4) + rng.range(1, 4), 5);
    Rat c(3 * rng.range(0, 8) + rng.range(1, 2), 3);
    a.canonicalize();
    b.canonicalize();
    c.canonicalize();
    long n = rng.range(0, 8);
    CHECK(hyp3f2_saalschutz(a, b, n, c) == hyp3f2_saalschutz_closed(a, b, n, c));
  }
}

TEST_CASE("Gegenbauer(3/2) family: routes, endpoint normalization, parity") {
  testutil::Rng rng(113);
  for (int i = 0; i < 60; ++i) {
    long k = rng.range(0, 12);
    Rat x = rng.rat(9, 4);
    Rat via_hyp = gegenbauer_c32(k, x);
    CHECK(via_hyp == gegenbauer_c32_recurrence(k, x));
    CHECK(via_hyp == poly_eval(gegenbauer_c32_coeffs(k), x));
    // Parity: C_k(-x) = (-1)^k C_k(x).
    CHECK(gegenbauer_c32(k, -x) == (k % 2 == 0 ? via_hyp : -via_hyp));
  }
  for (long k = 0; k <= 10; ++k) {
    CHECK(gegenbauer_c32(k, Rat(1)) == Rat(1));
    // Double-precision evaluator agrees with the exact one.
    double xd = 0.37;
    Rat xr(37, 100);
    CHECK(gegenbauer_c32(k, xd) ==
          doctest::Approx(gegenbauer_c32(k, xr).get_d()).epsilon(1e-12));
  }
}

TEST_CASE("Gegenbauer(3/2) weighted orthogonality against direct integration") {
  for (long k = 0; k <= 5; ++k) {
    for (long l = 0; l <= 5; ++l) {
      // Independent route inside the test: multiply the coefficient vectors,
      // attach the weight 1 - x^2, and integrate exactly.
      Poly prod = poly_mul(gegenbauer_c32_coeffs(k), gegenbauer_c32_coeffs(l));
      Poly weight = {Rat(1), Rat(0), Rat(-1)};
      Rat direct = poly_integral(poly_mul(prod, weight), Rat(-1), Rat(1));
      CHECK(gegenbauer_weighted_pairing(k, l) == direct);
      if (k != l) CHECK(direct == Rat(0));
    }
  }
  // Diagonal normalization for the value-1-at-1 scaling.
  CHECK(gegenbauer_weighted_pairing(0, 0) == Rat(4, 3));
  CHECK(gegenbauer_weighted_pairing(1, 1) == Rat(4, 15));
}

TEST_CASE("generating-function coefficients reproduce the scaled polynomials") {
  for (long k = 0; k <= 10; ++k) {
    Poly from_gen = gegenbauer_generating_coefficient(k);
    Poly scaled = poly_scale(gegenbauer_c32_coeffs(k), Rat((k + 1) * (k + 2)) / 2);
    REQUIRE(poly_degree(from_gen) == poly_degree(scaled));
    for (size_t j = 0; j < scaled.size(); ++j) CHECK(from_gen[j] == scaled[j]);
  }
}

TEST_CASE("alternating product sum over the shifted-Legendre family telescopes") {
  for (long n1 = 0; n1 <= 8; ++n1)
    for (long n2 = 0; n2 <= 8; ++n2)
      CHECK(shifted_legendre_sum(n1, n2) == Rat(1) / Rat(factorial(n1 + n2 + 1)));
}
