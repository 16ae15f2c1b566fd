// SPDX-License-Identifier: Apache-2.0
//
// Unit tests for formal power series and the moment/cumulant machinery.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <stdexcept>
#include <vector>

#include "freeconv/measure.hpp"
#include "freeconv/moment_cumulant.hpp"
#include "freeconv/series.hpp"
#include "test_util.hpp"

using namespace freeconv;

namespace {

FormalSeries random_invertible_series(testutil::Rng& rng, long order) {
  FormalSeries f(order);
  f[0] = Rat(0);
  f[1] = rng.nonzero_rat(3, 2);
  for (long j = 2; j <= order; ++j) f[j] = rng.rat(3, 2);
  return f;
}

}  // namespace

TEST_CASE("series arithmetic basics") {
  FormalSeries a(3), b(3);
  a[0] = Rat(1);
  a[1] = Rat(2);
  b[1] = Rat(1);
  b[3] = Rat(-1);

  FormalSeries sum = series_add(a, b, 3);
  CHECK(sum[1] == Rat(3));
  CHECK(sum[3] == Rat(-1));

  FormalSeries prod = series_mul(a, b, 3);
  // (1 + 2z)(z - z^3) = z + 2z^2 - z^3 + O(z^4)
  CHECK(prod[0] == Rat(0));
  CHECK(prod[1] == Rat(1));
  CHECK(prod[2] == Rat(2));
  CHECK(prod[3] == Rat(-1));

  FormalSeries cut = series_truncate(prod, 1);
  CHECK(cut.order() == 1);
  CHECK(cut[1] == Rat(1));
}

TEST_CASE("series reciprocal against the geometric series") {
  FormalSeries a(5);
  a[0] = Rat(1);
  a[1] = Rat(-1);
  FormalSeries inv = series_reciprocal(a, 5);
  for (long j = 0; j <= 5; ++j) CHECK(inv[j] == Rat(1));

  FormalSeries zero_const(2);
  CHECK_THROWS_AS(series_reciprocal(zero_const, 2), std::invalid_argument);

  testutil::Rng rng(7);
  for (int i = 0; i < 20; ++i) {
    FormalSeries f(6);
    f[0] = rng.nonzero_rat(4, 3);
    for (long j = 1; j <= 6; ++j) f[j] = rng.rat(4, 3);
    FormalSeries g = series_reciprocal(f, 6);
    FormalSeries prod = series_mul(f, g, 6);
    CHECK(prod[0] == Rat(1));
    for (long j = 1; j <= 6; ++j) CHECK(prod[j] == Rat(0));
  }
}

TEST_CASE("series reversion inverts composition in both orders") {
  testutil::Rng rng(11);
  for (int i = 0; i < 25; ++i) {
    long order = rng.range(2, 8);
    FormalSeries f = random_invertible_series(rng, order);
    FormalSeries g = revert_series(f);

    FormalSeries gf = series_compose(g, f, order);
    FormalSeries fg = series_compose(f, g, order);
    CHECK(gf[1] == Rat(1));
    CHECK(fg[1] == Rat(1));
    for (long j = 2; j <= order; ++j) {
      CHECK(gf[j] == Rat(0));
      CHECK(fg[j] == Rat(0));
    }
  }
}

TEST_CASE("reversion coefficients obey the inverse-power coefficient duality") {
  // k [z^k] g^n = n [z^-n] f^-k for g the compositional inverse of f.
  testutil::Rng rng(13);
  for (int i = 0; i < 40; ++i) {
    long order = rng.range(2, 7);
    FormalSeries f = random_invertible_series(rng, order);
    FormalSeries g = revert_series(f);
    long n = rng.range(1, order);
    long k = rng.range(1, order);
    if (k < n) continue;  // [z^k] g^n needs k >= n to be reachable at this order

    // [z^k] g^n: build g^n by repeated multiplication.
    FormalSeries gn = g;
    for (long t = 1; t < n; ++t) gn = series_mul(gn, g, order);
    Rat lhs = Rat(k) * gn[k];
    Rat rhs = Rat(n) * series_power_coefficient(f, -k, k - n);
    CHECK(lhs == rhs);
  }
}

TEST_CASE("composition sums match brute-force enumeration") {
  // seq chosen small so compositions of n can be enumerated by hand:
  // n = 4, k = 2 compositions are (1,3), (3,1), (2,2).
  std::vector<Rat> seq = {Rat(0), Rat(2), Rat(3), Rat(5), Rat(7)};
  CHECK(composition_sum(seq, 4, 2) == Rat(2 * 5 + 5 * 2 + 3 * 3));  // (1,3), (3,1), (2,2)
  CHECK(composition_sum(seq, 4, 4) == Rat(16));
  CHECK(composition_sum(seq, 3, 1) == Rat(5));
  CHECK(composition_sum(seq, 2, 3) == Rat(0));  // no composition of 2 into 3 positive parts

  auto table = composition_sum_table(seq, 4);
  CHECK(table[4][2] == Rat(29));
  CHECK(table[1][1] == Rat(2));
}

TEST_CASE("moment and cumulant composition sums invert each other") {
  testutil::Rng rng(17);
  for (int i = 0; i < 30; ++i) {
    long n = rng.range(1, 9);
    std::vector<Rat> mom(static_cast<size_t>(n) + 1, Rat(0));
    for (long j = 1; j <= n; ++j) mom[static_cast<size_t>(j)] = rng.rat(5, 3);

    auto mtable = composition_sum_table(mom, n);
    // Derive the cumulant sums from the moment sums, then transform back.
    std::vector<std::vector<Rat>> ktable(static_cast<size_t>(n) + 1);
    for (long nn = 1; nn <= n; ++nn) {
      ktable[static_cast<size_t>(nn)].assign(static_cast<size_t>(nn) + 1, Rat(0));
      for (long k = 1; k <= nn; ++k)
        ktable[static_cast<size_t>(nn)][static_cast<size_t>(k)] =
            cumulant_sum_from_moment_sums(mtable, nn, k);
    }
    for (long nn = 1; nn <= n; ++nn)
      for (long k = 1; k <= nn; ++k)
        CHECK(moment_sum_from_cumulant_sums(ktable, nn, k) ==
              mtable[static_cast<size_t>(nn)][static_cast<size_t>(k)]);
  }
}

TEST_CASE("free cumulants of the symmetric two-point law") {
  AtomicMeasure b = testutil::symmetric_bernoulli();
  CumulantVector k = measure_cumulants(b, 8);
  CHECK(k.entry[1] == Rat(0));
  CHECK(k.entry[2] == Rat(1));
  CHECK(k.entry[3] == Rat(0));
  CHECK(k.entry[4] == Rat(-1));
  CHECK(k.entry[5] == Rat(0));
  CHECK(k.entry[6] == Rat(2));
  CHECK(k.entry[7] == Rat(0));
  CHECK(k.entry[8] == Rat(-5));
}

TEST_CASE("moments and cumulants round-trip through both directions") {
  testutil::Rng rng(19);
  for (int i = 0; i < 25; ++i) {
    AtomicMeasure mu = rng.measure(1, 4);
    long order = rng.range(1, 10);
    MomentVector m = measure_moments(mu, order);
    CumulantVector k = cumulants_from_moments(m);
    MomentVector back = moments_from_cumulants(k);
    REQUIRE(back.order == order);
    for (long j = 0; j <= order; ++j) CHECK(back.entry[static_cast<size_t>(j)] ==
                                            m.entry[static_cast<size_t>(j)]);
  }
}

TEST_CASE("non-crossing partition oracle agrees with the transform route") {
  testutil::Rng rng(23);
  for (int i = 0; i < 10; ++i) {
    long order = rng.range(1, 8);
    CumulantVector k;
    k.order = order;
    k.entry.assign(static_cast<size_t>(order) + 1, Rat(0));
    for (long j = 1; j <= order; ++j) k.entry[static_cast<size_t>(j)] = rng.rat(4, 3);
    MomentVector fast = moments_from_cumulants(k);
    MomentVector slow = nc_moments_from_cumulants(k);
    for (long j = 0; j <= order; ++j)
      CHECK(fast.entry[static_cast<size_t>(j)] == slow.entry[static_cast<size_t>(j)]);
  }
  CumulantVector big;
  big.order = 15;
  big.entry.assign(16, Rat(1));
  CHECK_THROWS_AS(nc_moments_from_cumulants(big), std::invalid_argument);
}

TEST_CASE("free convolution of two fair coins gives the arcsine moments") {
  AtomicMeasure b = testutil::symmetric_bernoulli();
  MomentVector m = free_convolve_moments(b, b, 8);
  // Even moments are the central binomial coefficients, odd ones vanish.
  CHECK(m.entry[1] == Rat(0));
  CHECK(m.entry[2] == Rat(2));
  CHECK(m.entry[3] == Rat(0));
  CHECK(m.entry[4] == Rat(6));
  CHECK(m.entry[5] == Rat(0));
  CHECK(m.entry[6] == Rat(20));
  CHECK(m.entry[7] == Rat(0));
  CHECK(m.entry[8] == Rat(70));
}

TEST_CASE("free and classical convolutions share the first three moments") {
  testutil::Rng rng(29);
  for (int i = 0; i < 20; ++i) {
    AtomicMeasure mu = rng.measure(1, 4);
    AtomicMeasure nu = rng.measure(1, 4);
    MomentVector fr = free_convolve_moments(mu, nu, 3);
    AtomicMeasure cl = classical_convolve(mu, nu);
    for (long j = 1; j <= 3; ++j) CHECK(fr.entry[static_cast<size_t>(j)] == cl.moment(j));
  }
}

TEST_CASE("cumulant vectors add and scale covariantly") {
  testutil::Rng rng(31);
  for (int i = 0; i < 15; ++i) {
    AtomicMeasure mu = rng.measure(1, 4);
    AtomicMeasure nu = rng.measure(1, 4);
    long order = 8;
    CumulantVector ka = measure_cumulants(mu, order);
    CumulantVector kb = measure_cumulants(nu, order);
    CumulantVector sum = add_cumulants(ka, kb);
    MomentVector direct = free_convolve_moments(mu, nu, order);
    MomentVector via_sum = moments_from_cumulants(sum);
    for (long j = 0; j <= order; ++j)
      CHECK(direct.entry[static_cast<size_t>(j)] == via_sum.entry[static_cast<size_t>(j)]);

    // kappa_k(c mu) = c^k kappa_k(mu), realized on the pushforward.
    Rat c = rng.nonzero_rat(3, 2);
    CumulantVector scaled = scale_cumulants(ka, c);
    CumulantVector pushed = measure_cumulants(mu.scaled(c), order);
    for (long j = 1; j <= order; ++j)
      CHECK(scaled.entry[static_cast<size_t>(j)] == pushed.entry[static_cast<size_t>(j)]);
  }
}

TEST_CASE("symmetrized mixed word moments interpolate the pure powers") {
  testutil::Rng rng(37);
  for (int i = 0; i < 10; ++i) {
    AtomicMeasure mu = rng.measure(1, 3);
    AtomicMeasure nu = rng.measure(1, 3);
    long n = rng.range(1, 5);
    std::vector<Rat> mixed = mixed_free_symmetric_moments(mu, nu, n);
    REQUIRE(mixed.size() == static_cast<size_t>(n) + 1);
    // Entry n is the pure first-variable word, entry 0 the pure second.
    CHECK(mixed[static_cast<size_t>(n)] == mu.moment(n));
    CHECK(mixed[0] == nu.moment(n));
  }

  // Free coin pair: the balanced degree-4 word average is 2/3.
  AtomicMeasure b = testutil::symmetric_bernoulli();
  std::vector<Rat> m4 = mixed_free_symmetric_moments(b, b, 4);
  CHECK(m4[2] == Rat(2, 3));
}

TEST_CASE("psi series carries raw moments with the expected offset") {
  AtomicMeasure b = testutil::symmetric_bernoulli();
  MomentVector m = measure_moments(b, 4);
  FormalSeries psi = psi_series(m);
  REQUIRE(psi.order() == 5);
  CHECK(psi[0] == Rat(0));
  CHECK(psi[1] == Rat(1));   // m_0
  CHECK(psi[2] == Rat(0));   // m_1
  CHECK(psi[3] == Rat(1));   // m_2
  CHECK(psi[5] == Rat(1));   // m_4
}
