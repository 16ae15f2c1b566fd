// SPDX-License-Identifier: Apache-2.0
//
// Acceptance gate: one [PASS]/[FAIL] line per criterion, each criterion
// checked end to end with its tolerance and runtime budget pinned in code.
// Exit code is the number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "freeconv/comparison.hpp"
#include "freeconv/measure.hpp"
#include "freeconv/moment_cumulant.hpp"
#include "freeconv/polynomial.hpp"
#include "freeconv/rational.hpp"
#include "freeconv/series.hpp"
#include "freeconv/special_functions.hpp"
#include "freeconv/spectral.hpp"
#include "test_util.hpp"

using namespace freeconv;

namespace {

struct Gate {
  int failures = 0;
  int index = 0;

  // Runs one criterion; the body returns true on success and may append
  // detail text to the provided stream.
  void criterion(const std::string& label, double budget_seconds,
                 const std::function<bool(std::ostringstream&)>& body) {
    ++index;
    std::ostringstream detail;
    bool ok = false;
    std::string error;
    const auto start = std::chrono::steady_clock::now();
    try {
      ok = body(detail);
    } catch (const std::exception& e) {
      ok = false;
      error = e.what();
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_budget = elapsed < budget_seconds;
    if (!in_budget) ok = false;
    std::printf("[%s] %2d. %s (%.2f s, budget %.0f s)%s%s%s\n", ok ? "PASS" : "FAIL", index,
                label.c_str(), elapsed, budget_seconds,
                detail.str().empty() ? "" : " -- ", detail.str().c_str(),
                error.empty() ? "" : (" -- exception: " + error).c_str());
    if (!ok) ++failures;
  }
};

// The shared corpus: 50 seeded pairs of measures with at most 5 rational
// atoms in [-2, 2].
std::vector<std::pair<AtomicMeasure, AtomicMeasure>> corpus_pairs(std::uint64_t seed, int count,
                                                                  long max_atoms) {
  testutil::Rng rng(seed);
  std::vector<std::pair<AtomicMeasure, AtomicMeasure>> out;
  out.reserve(static_cast<size_t>(count));
  for (int i = 0; i < count; ++i)
    out.emplace_back(rng.measure(1, max_atoms), rng.measure(1, max_atoms));
  return out;
}

Poly monomial(long n) {
  Poly p(static_cast<size_t>(n) + 1, Rat(0));
  p[static_cast<size_t>(n)] = Rat(1);
  return p;
}

}  // namespace

int main() {
  Gate gate;
  const auto pairs = corpus_pairs(2026, 50, 5);

  // ------------------------------------------------------------------
  gate.criterion(
      "even classical moments dominate free moments through order 16, 50 pairs", 10.0,
      [&](std::ostringstream&) {
        for (const auto& pr : pairs) {
          AtomicMeasure cl = classical_convolve(pr.first, pr.second);
          MomentVector fr = free_convolve_moments(pr.first, pr.second, 16);
          for (long k = 1; k <= 8; ++k)
            if (cl.moment(2 * k) < fr.entry[static_cast<size_t>(2 * k)]) return false;
        }
        return true;
      });

  // ------------------------------------------------------------------
  gate.criterion(
      "fourth-moment gap equals 2 Var(mu) Var(nu) exactly, 50 pairs", 1.0,
      [&](std::ostringstream&) {
        for (const auto& pr : pairs) {
          AtomicMeasure cl = classical_convolve(pr.first, pr.second);
          MomentVector fr = free_convolve_moments(pr.first, pr.second, 4);
          Rat gap = cl.moment(4) - fr.entry[4];
          if (gap != 2 * pr.first.variance() * pr.second.variance()) return false;
        }
        return true;
      });

  // ------------------------------------------------------------------
  gate.criterion(
      "total mass: exact Var Var / 12 on 50 pairs; 64x64 grid integral within 1e-3 "
      "relative on 5 spread pairs",
      300.0, [&](std::ostringstream& detail) {
        for (const auto& pr : pairs)
          if (ccm_moment_series(pr.first, pr.second, 0, 0) !=
              pr.first.variance() * pr.second.variance() / 12)
            return false;

        testutil::Rng rng(7172);
        double worst = 0.0;
        for (int i = 0; i < 5; ++i) {
          AtomicMeasure mu = rng.spread_measure(3);
          AtomicMeasure nu = rng.spread_measure(3);
          DensityGrid grid = ccm_density_grid(mu, nu, 64, 64, 1e-6, 1);
          double exact = Rat(mu.variance() * nu.variance() / 12).get_d();
          double rel = std::abs(grid.mass() - exact) / exact;
          worst = std::max(worst, rel);
          if (rel > 1e-3) {
            detail << "relative mass error " << rel;
            return false;
          }
        }
        detail << "worst relative mass error " << worst;
        return true;
      });

  // ------------------------------------------------------------------
  gate.criterion(
      "three-route equality: mixed moments to order 10 and derivative pairing to "
      "degree 12 on 20 pairs",
      30.0, [&](std::ostringstream&) {
        testutil::Rng rng(9241);
        const Rat all_scales[5] = {Rat(1), Rat(-1), Rat(2), Rat(-2), Rat(1, 2)};
        for (int i = 0; i < 20; ++i) {
          AtomicMeasure mu = rng.measure(1, 4);
          AtomicMeasure nu = rng.measure(1, 4);
          for (long a = 0; a <= 10; ++a)
            for (long b = 0; a + b <= 10; ++b)
              if (ccm_moment_series(mu, nu, a, b) !=
                  ccm_moment_via_cumulant_difference(mu, nu, a, b))
                return false;

          long deg = (i % 2 == 0) ? 12 : rng.range(4, 12);
          Poly p(static_cast<size_t>(deg) + 1, Rat(0));
          for (long j = 0; j <= deg; ++j) p[static_cast<size_t>(j)] = rng.rat(3, 2);
          for (const Rat& a : all_scales)
            for (const Rat& b : all_scales)
              if (apply_ccm_to_shifted_poly(mu, nu, p, a, b) !=
                  convolution_gap(mu, nu, p, a, b))
                return false;
        }
        return true;
      });

  // ------------------------------------------------------------------
  gate.criterion(
      "spectral moments: trace formula vs adaptive quadrature within 1e-5 for k,l <= 3 "
      "on 20 Hermitian pairs (d <= 4), constant = (tr A^2B^2 - tr ABAB)/6",
      120.0, [&](std::ostringstream& detail) {
        testutil::Rng rng(5150);
        double worst = 0.0;
        for (int i = 0; i < 20; ++i) {
          const long d = 2 + (i % 3);  // dimensions 2, 3, 4 in rotation
          CMat raw(d, d);
          for (long r = 0; r < d; ++r)
            for (long c = 0; c < d; ++c)
              raw(r, c) = std::complex<double>(2.0 * rng.unit() - 1.0, 2.0 * rng.unit() - 1.0);
          HermitianMatrix A(0.5 * (raw + raw.adjoint()));
          for (long r = 0; r < d; ++r)
            for (long c = 0; c < d; ++c)
              raw(r, c) = std::complex<double>(2.0 * rng.unit() - 1.0, 2.0 * rng.unit() - 1.0);
          HermitianMatrix B(0.5 * (raw + raw.adjoint()));

          auto quad = omega_quadrature_moments(A, B, 3, 3, 1e-6);
          for (long k = 0; k <= 3; ++k)
            for (long l = 0; l <= 3; ++l) {
              double dev = std::abs(quad[static_cast<size_t>(k)][static_cast<size_t>(l)] -
                                    omega_trace_moment(A, B, k, l));
              worst = std::max(worst, dev);
              if (dev > 1e-5) {
                detail << "k=" << k << " l=" << l << " dev " << dev;
                return false;
              }
            }

          // The mass constant against the explicit commutator traces.
          const CMat a = A.mat(), b = B.mat();
          double direct = ((a * a * b * b).trace().real() - (a * b * a * b).trace().real()) / 6.0;
          if (std::abs(omega_trace_moment(A, B, 0, 0) - direct) > 1e-10) return false;
        }
        detail << "worst quadrature deviation " << worst;
        return true;
      });

  // ------------------------------------------------------------------
  gate.criterion(
      "component functionals: exact route vs spectral quadrature within 1e-5 for "
      "l <= 3, n <= 4 on 5 measures",
      120.0, [&](std::ostringstream& detail) {
        testutil::Rng rng(6280);
        double worst = 0.0;
        for (int i = 0; i < 5; ++i) {
          AtomicMeasure mu = rng.measure(2, 4);
          auto exact = i_functional_table(mu, 3, 4);
          auto spectral = i_functional_spectral_table(mu, 3, 4, 1e-6);
          for (long l = 0; l <= 3; ++l)
            for (long n = 0; n <= 4; ++n) {
              double dev =
                  std::abs(spectral[static_cast<size_t>(l)][static_cast<size_t>(n)] -
                           exact[static_cast<size_t>(l)][static_cast<size_t>(n)].get_d());
              worst = std::max(worst, dev);
              if (dev > 1e-5) {
                detail << "l=" << l << " n=" << n << " dev " << dev;
                return false;
              }
            }
        }
        detail << "worst deviation " << worst;
        return true;
      });

  // ------------------------------------------------------------------
  gate.criterion(
      "identity validators: hypergeometric sums, orthogonality, generating function, "
      "transform round trips, reversion duality; >= 100 exact instances each",
      30.0, [&](std::ostringstream&) {
        testutil::Rng rng(314159);

        // Terminating Gauss sum against its closed form.
        for (int i = 0; i < 120; ++i) {
          Rat a = rng.rat(9, 4);
          long n = rng.range(0, 12);
          Rat c(rng.range(1, 60), rng.range(2, 5));
          c.canonicalize();
          if (c.get_den() == 1) c += Rat(1, 3);
          if (hyp2f1_terminating(a, n, c) != hyp2f1_chu_vandermonde(a, n, c)) return false;
        }

        // Balanced 3F2 against its closed form.
        for (int i = 0; i < 120; ++i) {
          Rat a(2 * rng.range(-6, 6) + 1, 2);
          Rat b(5 * rng.range(-4, 4) + rng.range(1, 4), 5);
          Rat c(3 * rng.range(0, 8) + rng.range(1, 2), 3);
          a.canonicalize();
          b.canonicalize();
          c.canonicalize();
          long n = rng.range(0, 8);
          if (hyp3f2_saalschutz(a, b, n, c) != hyp3f2_saalschutz_closed(a, b, n, c)) return false;
        }

        // Alternating product sum over the shifted-Legendre family.
        for (int i = 0; i < 100; ++i) {
          long n1 = rng.range(0, 9);
          long n2 = rng.range(0, 9);
          if (shifted_legendre_sum(n1, n2) != Rat(1) / Rat(factorial(n1 + n2 + 1))) return false;
        }

        // Gegenbauer weighted orthogonality and generating coefficients.
        for (int i = 0; i < 100; ++i) {
          long k = rng.range(0, 8);
          long l = rng.range(0, 8);
          Poly prod = poly_mul(gegenbauer_c32_coeffs(k), gegenbauer_c32_coeffs(l));
          Poly weight = {Rat(1), Rat(0), Rat(-1)};
          Rat direct = poly_integral(poly_mul(prod, weight), Rat(-1), Rat(1));
          if (gegenbauer_weighted_pairing(k, l) != direct) return false;
          if (k != l && direct != Rat(0)) return false;

          Poly gen = gegenbauer_generating_coefficient(k);
          Poly scaled = poly_scale(gegenbauer_c32_coeffs(k), Rat((k + 1) * (k + 2)) / 2);
          if (gen.size() != scaled.size()) return false;
          for (size_t j = 0; j < gen.size(); ++j)
            if (gen[j] != scaled[j]) return false;
        }

        // Composition-sum transform round trips in both directions.
        for (int i = 0; i < 100; ++i) {
          long n = rng.range(1, 9);
          std::vector<Rat> seq(static_cast<size_t>(n) + 1, Rat(0));
          for (long j = 1; j <= n; ++j) seq[static_cast<size_t>(j)] = rng.rat(5, 3);
          auto mtable = composition_sum_table(seq, n);
          std::vector<std::vector<Rat>> ktable(static_cast<size_t>(n) + 1);
          for (long nn = 1; nn <= n; ++nn) {
            ktable[static_cast<size_t>(nn)].assign(static_cast<size_t>(nn) + 1, Rat(0));
            for (long k = 1; k <= nn; ++k)
              ktable[static_cast<size_t>(nn)][static_cast<size_t>(k)] =
                  cumulant_sum_from_moment_sums(mtable, nn, k);
          }
          for (long nn = 1; nn <= n; ++nn)
            for (long k = 1; k <= nn; ++k)
              if (moment_sum_from_cumulant_sums(ktable, nn, k) !=
                  mtable[static_cast<size_t>(nn)][static_cast<size_t>(k)])
                return false;
        }

        // Series reversion coefficient duality.
        for (int i = 0; i < 100; ++i) {
          long order = rng.range(2, 7);
          FormalSeries f(order);
          f[1] = rng.nonzero_rat(3, 2);
          for (long j = 2; j <= order; ++j) f[j] = rng.rat(3, 2);
          FormalSeries g = revert_series(f);
          long n = rng.range(1, order);
          long k = rng.range(n, order);
          FormalSeries gn = g;
          for (long t = 1; t < n; ++t) gn = series_mul(gn, g, order);
          if (Rat(k) * gn[k] != Rat(n) * series_power_coefficient(f, -k, k - n)) return false;
        }
        return true;
      });

  // ------------------------------------------------------------------
  gate.criterion(
      "defect density: at most one nonreal pair and bounded by hull-length/pi at "
      "1000 points for each of 10 measures",
      60.0, [&](std::ostringstream&) {
        testutil::Rng rng(8399);
        for (int i = 0; i < 10; ++i) {
          AtomicMeasure mu = rng.measure(2, 5);
          MeasureEmbedding emb = embed_measure(mu);
          auto hull = mu.support_hull();
          double lo = hull.first.get_d(), hi = hull.second.get_d();
          double bound = (hi - lo) / 3.14159265358979323846 + 1e-9;
          for (int s = 0; s < 1000; ++s) {
            double a = lo + (hi - lo) * rng.unit();
            double b = rng.unit();
            if (nonreal_pair_count(emb, a, b) > 1) return false;
            double w = omega_density(emb, a, b);
            if (!(w >= 0.0 && w <= bound)) return false;
          }
        }
        return true;
      });

  // ------------------------------------------------------------------
  gate.criterion(
      "leading order: sextic residual decays by >= 2x per halving of eps on 5 pairs; "
      "quartic functional equals 4 Var exactly",
      10.0, [&](std::ostringstream&) {
        testutil::Rng rng(4231);
        Poly f6 = monomial(6);
        for (int i = 0; i < 5; ++i) {
          AtomicMeasure mu = rng.spread_measure(4);
          if (leading_order_functional(mu, monomial(4)) != 4 * mu.variance()) return false;

          Rat x = rng.nonzero_rat(3, 2);
          AtomicMeasure nu = make_measure({-x, x}, {Rat(1), Rat(1)});
          Rat lead = leading_order_functional(mu, f6) * nu.variance() / 2;
          Rat prev(0);
          bool have_prev = false;
          for (long e = 2; e <= 4; ++e) {
            Rat eps(1, 1L << e);
            Rat gap = convolution_gap(mu, nu.scaled(eps), f6, Rat(1), Rat(1));
            Rat residual = gap / (eps * eps) - lead;
            Rat mag = residual >= 0 ? residual : -residual;
            if (have_prev && 2 * mag > prev) return false;
            prev = mag;
            have_prev = true;
          }
        }
        return true;
      });

  // ------------------------------------------------------------------
  gate.criterion(
      "two-point pair: independent-minus-free value of the balanced degree-4 mixed "
      "word equals 1/3 exactly",
      1.0, [&](std::ostringstream&) {
        AtomicMeasure b = testutil::symmetric_bernoulli();
        std::vector<Rat> mixed = mixed_free_symmetric_moments(b, b, 4);
        Rat independent = b.moment(2) * b.moment(2);
        return independent - mixed[2] == Rat(1, 3);
      });

  // ------------------------------------------------------------------
  gate.criterion(
      "triple convolutions: even classical moments dominate free moments through "
      "order 12 on 10 triples",
      10.0, [&](std::ostringstream&) {
        testutil::Rng rng(671);
        for (int i = 0; i < 10; ++i) {
          AtomicMeasure m1 = rng.measure(1, 4);
          AtomicMeasure m2 = rng.measure(1, 4);
          AtomicMeasure m3 = rng.measure(1, 4);
          AtomicMeasure cl = classical_convolve(classical_convolve(m1, m2), m3);
          CumulantVector sum =
              add_cumulants(add_cumulants(measure_cumulants(m1, 12), measure_cumulants(m2, 12)),
                            measure_cumulants(m3, 12));
          MomentVector fr = moments_from_cumulants(sum);
          for (long k = 1; k <= 6; ++k)
            if (cl.moment(2 * k) < fr.entry[static_cast<size_t>(2 * k)]) return false;
        }
        return true;
      });

  std::printf("%s: %d of %d criteria failed\n", gate.failures == 0 ? "OK" : "FAILED",
              gate.failures, gate.index);
  return gate.failures;
}
