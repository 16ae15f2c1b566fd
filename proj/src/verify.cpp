// SPDX-License-Identifier: Apache-2.0
//
// Randomized self-verification suites. Every check either re-derives a
// quantity along two or more independent routes and compares, or validates
// an exact identity on random instances. Output is deterministic for a
// fixed (suite, seed) pair.

#include "freeconv/verify.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <set>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "freeconv/comparison.hpp"
#include "freeconv/measure.hpp"
#include "freeconv/moment_cumulant.hpp"
#include "freeconv/polynomial.hpp"
#include "freeconv/quadrature.hpp"
#include "freeconv/rational.hpp"
#include "freeconv/series.hpp"
#include "freeconv/special_functions.hpp"
#include "freeconv/spectral.hpp"

namespace freeconv {
namespace {

constexpr double kPi = 3.14159265358979323846;

struct Checker {
  std::ostream& out;
  int checks = 0;
  int failures = 0;

  void record(const std::string& name, bool ok, const std::string& detail = std::string()) {
    ++checks;
    if (!ok) ++failures;
    out << (ok ? "[PASS] " : "[FAIL] ") << name;
    if (!ok && !detail.empty()) out << "  (" << detail << ")";
    out << "\n";
  }
};

// Deterministic generator. Avoids std::uniform_*_distribution so that the
// byte stream of the report does not depend on the standard library build.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ULL) {}

  std::uint64_t u64() {
    // splitmix64 step: equidistributed enough for test-instance generation.
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform-ish integer in [lo, hi] inclusive.
  long range(long lo, long hi) {
    return lo + static_cast<long>(u64() % static_cast<std::uint64_t>(hi - lo + 1));
  }

  double unit() { return static_cast<double>(u64() >> 11) * 0x1.0p-53; }

  Rat rat(long max_num, long max_den) {
    Rat r(range(-max_num, max_num), range(1, max_den));
    r.canonicalize();
    return r;
  }

  Rat nonzero_rat(long max_num, long max_den) {
    for (;;) {
      Rat r = rat(max_num, max_den);
      if (r != 0) return r;
    }
  }

  // Random atomic measure with atoms in [-2, 2].
  AtomicMeasure measure(long min_atoms, long max_atoms) {
    const long n = range(min_atoms, max_atoms);
    std::set<Rat> xs;
    while (static_cast<long>(xs.size()) < n) {
      long den = range(1, 4);
      Rat x(range(-2 * den, 2 * den), den);
      x.canonicalize();
      xs.insert(x);
    }
    std::vector<Rat> points(xs.begin(), xs.end());
    std::vector<Rat> weights;
    for (long i = 0; i < n; ++i) weights.push_back(Rat(range(1, 9)));
    return make_measure(points, weights);
  }

  HermitianMatrix hermitian(long d) {
    CMat raw(d, d);
    for (long i = 0; i < d; ++i)
      for (long j = 0; j < d; ++j)
        raw(i, j) = std::complex<double>(2.0 * unit() - 1.0, 2.0 * unit() - 1.0);
    CMat sym = 0.5 * (raw + raw.adjoint());
    return HermitianMatrix(sym);
  }

 private:
  std::uint64_t state_;
};

// Exact positive-semidefiniteness of a symmetric rational matrix via
// fraction-free style Gaussian elimination: all pivots must be >= 0 and a
// zero pivot forces its whole remaining row to vanish.
bool psd_exact(std::vector<std::vector<Rat>> m) {
  const size_t n = m.size();
  for (size_t k = 0; k < n; ++k) {
    if (m[k][k] < 0) return false;
    if (m[k][k] == 0) {
      for (size_t j = k; j < n; ++j)
        if (m[k][j] != 0) return false;
      continue;
    }
    for (size_t i = k + 1; i < n; ++i) {
      Rat f = m[i][k] / m[k][k];
      for (size_t j = k; j < n; ++j) m[i][j] -= f * m[k][j];
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Suite: identities
// ---------------------------------------------------------------------------

void suite_identities(Checker& c, Rng& rng) {
  // Chu-Vandermonde: terminating 2F1 at unit argument vs the closed form.
  {
    bool ok = true;
    for (int t = 0; t < 120 && ok; ++t) {
      Rat a = rng.rat(9, 4);
      long n = rng.range(0, 12);
      Rat cc(rng.range(1, 60), rng.range(2, 5));
      cc.canonicalize();
      ok = hyp2f1_terminating(a, n, cc) == hyp2f1_chu_vandermonde(a, n, cc);
    }
    c.record("Chu-Vandermonde summation, 120 random instances", ok);
  }

  // Saalschuetz: balanced terminating 3F2 vs the closed form. Parameters are
  // kept non-integral so no Pochhammer factor can vanish.
  {
    bool ok = true;
    for (int t = 0; t < 120 && ok; ++t) {
      Rat a(2 * rng.range(-6, 6) + 1, 2);
      Rat b(5 * rng.range(-4, 4) + rng.range(1, 4), 5);
      Rat cc(3 * rng.range(0, 8) + rng.range(1, 2), 3);
      long n = rng.range(0, 8);
      ok = hyp3f2_saalschutz(a, b, n, cc) == hyp3f2_saalschutz_closed(a, b, n, cc);
    }
    c.record("Saalschuetz summation, 120 random instances", ok);
  }

  // Completeness of the shifted Legendre alternating sum: equals
  // 1/(n1+n2+1)! for all orders.
  {
    bool ok = true;
    for (long n1 = 0; n1 <= 9 && ok; ++n1)
      for (long n2 = 0; n2 <= 9 && ok; ++n2)
        ok = shifted_legendre_sum(n1, n2) == Rat(1) / Rat(factorial(n1 + n2 + 1));
    c.record("shifted-Legendre product sum closes to 1/(n1+n2+1)!, 100 instances", ok);
  }

  // Gegenbauer(3/2): hypergeometric evaluation, three-term recurrence and
  // the exact coefficient vector agree pointwise.
  {
    bool ok = true;
    for (int t = 0; t < 100 && ok; ++t) {
      long k = rng.range(0, 12);
      Rat x = rng.rat(9, 4);
      Rat v1 = gegenbauer_c32(k, x);
      Rat v2 = gegenbauer_c32_recurrence(k, x);
      Rat v3 = poly_eval(gegenbauer_c32_coeffs(k), x);
      ok = (v1 == v2) && (v1 == v3);
    }
    c.record("Gegenbauer(3/2) three evaluation routes agree, 100 random instances", ok);
  }

  // Gegenbauer(3/2) orthogonality with weight (1 - x^2) on [-1, 1].
  {
    bool ok = true;
    for (long k = 0; k <= 9 && ok; ++k)
      for (long l = 0; l <= 9 && ok; ++l) {
        Rat expect = (k == l) ? Rat(8) / Rat((2 * k + 3) * (k + 1) * (k + 2)) : Rat(0);
        ok = gegenbauer_weighted_pairing(k, l) == expect;
      }
    c.record("Gegenbauer(3/2) weighted orthogonality, 100 pairs", ok);
  }

  // Generating function (1 - 2xt + t^2)^(-3/2): coefficient of t^k equals
  // (k+1)(k+2)/2 times the polynomial, evaluated at random points.
  {
    bool ok = true;
    for (int t = 0; t < 100 && ok; ++t) {
      long k = rng.range(0, 20);
      Rat x = rng.rat(6, 3);
      Rat lhs = poly_eval(gegenbauer_generating_coefficient(k), x);
      Rat rhs = Rat((k + 1) * (k + 2)) / 2 * gegenbauer_c32(k, x);
      ok = lhs == rhs;
    }
    c.record("Gegenbauer(3/2) generating-function coefficients, 100 random instances", ok);
  }

  // Composition-sum transforms: starting from random moments, the derived
  // cumulant table reproduces both directions of the triangular transform.
  {
    bool ok = true;
    for (int t = 0; t < 100 && ok; ++t) {
      long n = rng.range(1, 10);
      std::vector<Rat> mom(static_cast<size_t>(n) + 1, Rat(0));
      for (long j = 1; j <= n; ++j) mom[static_cast<size_t>(j)] = rng.rat(5, 3);
      auto mtable = composition_sum_table(mom, n);

      std::vector<Rat> kap(static_cast<size_t>(n) + 1, Rat(0));
      for (long j = 1; j <= n; ++j)
        kap[static_cast<size_t>(j)] = cumulant_sum_from_moment_sums(mtable, j, 1);
      auto ktable = composition_sum_table(kap, n);

      for (long nn = 1; nn <= n && ok; ++nn)
        for (long kk = 1; kk <= nn && ok; ++kk) {
          ok = ktable[static_cast<size_t>(nn)][static_cast<size_t>(kk)] ==
                   cumulant_sum_from_moment_sums(mtable, nn, kk) &&
               mtable[static_cast<size_t>(nn)][static_cast<size_t>(kk)] ==
                   moment_sum_from_cumulant_sums(ktable, nn, kk);
        }
    }
    c.record("moment/cumulant composition-sum transforms invert each other, 100 instances", ok);
  }

  // Reversion coefficient duality: for g the compositional inverse of f,
  // k [z^k] g^n = n [z^(-n)] f^(-k).
  {
    bool ok = true;
    for (int t = 0; t < 100 && ok; ++t) {
      long ord = rng.range(2, 8);
      FormalSeries f(ord);
      f[1] = rng.nonzero_rat(3, 2);
      for (long j = 2; j <= ord; ++j) f[j] = rng.rat(3, 2);
      FormalSeries g = revert_series(f);
      long n = rng.range(1, ord);
      long m = rng.range(0, ord - 1);
      long k = n + m;
      Rat lhs = Rat(k) * series_power_coefficient(g, n, m);
      Rat rhs = Rat(n) * series_power_coefficient(f, -k, m);
      ok = lhs == rhs;
    }
    c.record("series reversion coefficient duality, 100 random instances", ok);
  }

  // Non-crossing partition oracle: moments enumerated over non-crossing
  // partitions invert back to the starting cumulants via series reversion.
  {
    bool ok = true;
    for (int t = 0; t < 100 && ok; ++t) {
      long n = rng.range(1, 7);
      CumulantVector kap;
      kap.order = n;
      kap.entry.assign(static_cast<size_t>(n) + 1, Rat(0));
      for (long j = 1; j <= n; ++j) kap.entry[static_cast<size_t>(j)] = rng.rat(4, 3);
      MomentVector m = nc_moments_from_cumulants(kap);
      CumulantVector back = cumulants_from_moments(m);
      MomentVector m2 = moments_from_cumulants(kap);
      ok = back.entry == kap.entry && m2.entry == m.entry;
    }
    c.record("non-crossing partition oracle round trip, 100 random instances", ok);
  }

  // Divided differences: recurrence, explicit sum, and the complete
  // homogeneous closed form for monomials all agree on distinct nodes.
  {
    bool ok = true;
    for (int t = 0; t < 100 && ok; ++t) {
      long nn = rng.range(2, 5);
      std::set<Rat> xs;
      while (static_cast<long>(xs.size()) < nn) xs.insert(rng.rat(6, 3));
      std::vector<Rat> nodes(xs.begin(), xs.end());
      long p = rng.range(0, 8);
      std::vector<Rat> values;
      for (const Rat& x : nodes) {
        Rat v = 1;
        for (long j = 0; j < p; ++j) v *= x;
        values.push_back(v);
      }
      Rat v1 = divided_difference(nodes, values);
      Rat v2 = divided_difference_explicit(nodes, values);
      Rat v3 = divided_difference_power(nodes, p);
      ok = (v1 == v2) && (v1 == v3);
    }
    c.record("divided-difference three routes agree, 100 random instances", ok);
  }
}

// ---------------------------------------------------------------------------
// Suite: spectral
// ---------------------------------------------------------------------------

void suite_spectral(Checker& c, Rng& rng) {
  std::vector<AtomicMeasure> measures;
  for (int i = 0; i < 6; ++i) measures.push_back(rng.measure(2, 4));

  // Trace formula vs exact composition sums on diagonal-plus-rank-one
  // embeddings, for all moment orders k + l <= 4.
  {
    bool ok = true;
    std::ostringstream why;
    for (const auto& mu : measures) {
      MeasureEmbedding emb = embed_measure(mu);
      HermitianMatrix A(emb.a_matrix());
      HermitianMatrix B(emb.b_matrix());
      for (long k = 0; k <= 3 && ok; ++k)
        for (long l = 0; l <= 3 && ok; ++l) {
          if (k + l > 4) continue;
          double t = omega_trace_moment(A, B, k, l);
          double e = (omega_embed_moment_exact(mu, k, l)).get_d();
          if (std::abs(t - e) > 1e-9 * (1.0 + std::abs(e))) {
            ok = false;
            why << "k=" << k << " l=" << l << " trace=" << t << " exact=" << e;
          }
        }
    }
    c.record("trace-formula moments match exact composition-sum moments (6 embeddings)", ok,
             why.str());
  }

  // Rank-one mass closed form: the (0,0) moment equals Var/6 on embeddings.
  {
    bool ok = true;
    for (const auto& mu : measures) {
      Rat expect = mu.variance() / 6;
      if (omega_embed_moment_exact(mu, 0, 0) != expect) ok = false;
      MeasureEmbedding emb = embed_measure(mu);
      double t = omega_trace_moment(HermitianMatrix(emb.a_matrix()),
                                    HermitianMatrix(emb.b_matrix()), 0, 0);
      if (std::abs(t - (expect).get_d()) > 1e-10 * (1.0 + std::abs(t))) ok = false;
    }
    c.record("embedding mass equals Var/6 along both exact routes (6 measures)", ok);
  }

  // Eigenvalue routes: determinant/companion reduction vs dense QR on the
  // full product matrix.
  {
    bool ok = true;
    std::ostringstream why;
    for (int t = 0; t < 50 && ok; ++t) {
      const AtomicMeasure& mu = measures[static_cast<size_t>(rng.range(0, 5))];
      MeasureEmbedding emb = embed_measure(mu);
      auto hull = mu.support_hull();
      double lo = (hull.first).get_d(), hi = (hull.second).get_d();
      double a = lo + (hi - lo) * rng.unit();
      double b = rng.unit();
      auto r1 = embed_eigenvalues(emb, a, b);
      CMat am = emb.a_matrix(), bm = emb.b_matrix();
      long d = emb.dim();
      CMat prod = (am - a * CMat::Identity(d, d)) * (bm - b * CMat::Identity(d, d));
      auto r2 = general_eigenvalues(prod);
      double scale = 1.0;
      for (auto z : r2) scale = std::max(scale, std::abs(z));
      // Power sums are well-conditioned symmetric functions of the spectrum;
      // individual eigenvalues near collisions are not, so the pointwise
      // pairing only gets a loose square-root-of-epsilon budget.
      for (int k = 1; k <= 4 && ok; ++k) {
        std::complex<double> p1 = 0.0, p2 = 0.0;
        for (auto z : r1) p1 += std::pow(z, k);
        for (auto z : r2) p2 += std::pow(z, k);
        if (std::abs(p1 - p2) > 1e-10 * std::pow(scale, k) * static_cast<double>(d)) {
          ok = false;
          why << "power sum k=" << k << " at a=" << a << " b=" << b;
        }
      }
      std::vector<bool> used(r2.size(), false);
      for (auto z1 : r1) {
        double best = std::numeric_limits<double>::infinity();
        size_t arg = 0;
        for (size_t i = 0; i < r2.size(); ++i) {
          if (used[i]) continue;
          const double dist = std::abs(z1 - r2[i]);
          if (dist < best) {
            best = dist;
            arg = i;
          }
        }
        used[arg] = true;
        if (best > 1e-6 * scale) {
          ok = false;
          why << "unmatched eigenvalue at a=" << a << " b=" << b;
        }
      }
    }
    c.record("companion-reduction eigenvalues match dense QR eigenvalues, 50 instances", ok,
             why.str());
  }

  // Structure of the nonreal spectrum for rank-one second factor: never more
  // than one conjugate pair, and the density obeys the hull-length bound.
  {
    bool ok_pairs = true;
    bool ok_bound = true;
    for (int t = 0; t < 300; ++t) {
      const AtomicMeasure& mu = measures[static_cast<size_t>(rng.range(0, 5))];
      MeasureEmbedding emb = embed_measure(mu);
      auto hull = mu.support_hull();
      double lo = (hull.first).get_d(), hi = (hull.second).get_d();
      double a = lo + (hi - lo) * rng.unit();
      double b = rng.unit();
      if (nonreal_pair_count(emb, a, b) > 1) ok_pairs = false;
      double w = omega_density(emb, a, b);
      double bound = (hi - lo) / kPi;
      if (!(w >= 0.0 && w <= bound + 1e-12)) ok_bound = false;
    }
    c.record("at most one nonreal conjugate pair at 300 random points", ok_pairs);
    c.record("density within [0, hull-length/pi] at 300 random points", ok_bound);
  }

  // Independent quadrature of the density reproduces the trace-formula mass
  // for general (non-embedding) Hermitian pairs.
  {
    bool ok = true;
    std::ostringstream why;
    for (int t = 0; t < 3 && ok; ++t) {
      const int d = static_cast<int>(rng.range(2, 3));
      HermitianMatrix A = rng.hermitian(d);
      HermitianMatrix B = rng.hermitian(d);
      double mass_trace = omega_trace_moment(A, B, 0, 0);
      try {
        double mass_quad = omega_quadrature_moment(A, B, 0, 0, 1e-6);
        if (std::abs(mass_quad - mass_trace) > 1e-4 * (1.0 + std::abs(mass_trace))) {
          ok = false;
          why << "trace=" << mass_trace << " quad=" << mass_quad;
        }
      } catch (const QuadratureError& e) {
        ok = false;
        why << "quadrature did not settle: " << e.what();
      }
    }
    c.record("adaptive quadrature reproduces trace-formula mass, 3 Hermitian pairs", ok,
             why.str());
  }

  c.out << "note: the total density mass for a Hermitian pair (A, B) resolves to\n"
        << "      (tr(A^2 B^2) - tr(A B A B)) / 6;\n"
        << "      confirmed above along two independent routes: adaptive quadrature of\n"
        << "      the pointwise density, and the closed form Var/6 when B is the\n"
        << "      rank-one projector of a measure embedding.\n";
}

// ---------------------------------------------------------------------------
// Suite: ccm
// ---------------------------------------------------------------------------

void suite_ccm(Checker& c, Rng& rng) {
  std::vector<AtomicMeasure> ms;
  for (int i = 0; i < 25; ++i) ms.push_back(rng.measure(1, 4));

  // Component functionals: the moment-table route and the cumulant-table
  // route are algebraically independent derivations of the same numbers.
  {
    bool ok = true;
    for (const auto& mu : ms) {
      for (long l = 0; l <= 3 && ok; ++l)
        for (long n = 0; n <= 6 && ok; ++n)
          ok = i_functional(mu, l, n) == i_functional_cumulant_route(mu, l, n);
    }
    c.record("component functionals agree along moment and cumulant routes (25 measures)", ok);
  }

  // Comparison-measure moments: expansion over the component functionals vs
  // the direct cumulant-difference formula, for all orders up to 6.
  {
    bool ok = true;
    for (int t = 0; t < 25 && ok; ++t) {
      const auto& mu = ms[static_cast<size_t>(t)];
      const auto& nu = ms[static_cast<size_t>((t * 7 + 3) % 25)];
      for (long a = 0; a <= 6 && ok; ++a)
        for (long b = 0; a + b <= 6 && ok; ++b)
          ok = ccm_moment_series(mu, nu, a, b) == ccm_moment_via_cumulant_difference(mu, nu, a, b);
    }
    c.record("comparison-measure moments agree along series and cumulant routes, 25 pairs", ok);
  }

  // Mass and fourth-moment normalizations.
  {
    bool ok_mass = true;
    bool ok_m4 = true;
    Poly t4 = {Rat(0), Rat(0), Rat(0), Rat(0), Rat(1)};
    for (int t = 0; t < 25; ++t) {
      const auto& mu = ms[static_cast<size_t>(t)];
      const auto& nu = ms[static_cast<size_t>((t * 11 + 5) % 25)];
      Rat vv = mu.variance() * nu.variance();
      if (ccm_moment_series(mu, nu, 0, 0) != vv / 12) ok_mass = false;
      Rat gap = convolution_gap(mu, nu, t4, Rat(1), Rat(1));
      if (gap != 2 * vv) ok_m4 = false;
      if (apply_ccm_to_shifted_poly(mu, nu, t4, Rat(1), Rat(1)) != gap) ok_m4 = false;
    }
    c.record("total comparison mass equals Var(mu) Var(nu) / 12, 25 pairs", ok_mass);
    c.record("quartic convolution gap equals 2 Var(mu) Var(nu), 25 pairs", ok_m4);
  }

  // Pairing identity: for arbitrary polynomials, integrating the fourth
  // mixed derivative against the comparison measure reproduces the
  // classical-minus-free moment gap exactly.
  {
    bool ok = true;
    std::ostringstream why;
    const Rat scales[6] = {Rat(1), Rat(-1), Rat(2), Rat(-2), Rat(1, 2), Rat(3, 2)};
    for (int t = 0; t < 20 && ok; ++t) {
      const auto& mu = ms[static_cast<size_t>(rng.range(0, 24))];
      const auto& nu = ms[static_cast<size_t>(rng.range(0, 24))];
      long deg = rng.range(4, 8);
      Poly p(static_cast<size_t>(deg) + 1, Rat(0));
      for (long j = 0; j <= deg; ++j) p[static_cast<size_t>(j)] = rng.rat(3, 2);
      Rat a = scales[rng.range(0, 5)];
      Rat b = scales[rng.range(0, 5)];
      Rat lhs = convolution_gap(mu, nu, p, a, b);
      Rat rhs = apply_ccm_to_shifted_poly(mu, nu, p, a, b);
      if (lhs != rhs) {
        ok = false;
        why << "deg=" << deg;
      }
    }
    c.record("derivative pairing reproduces the convolution gap, 20 random instances", ok,
             why.str());
  }

  // Even-moment domination of the classical convolution over the free one.
  {
    bool ok = true;
    for (int t = 0; t < 20 && ok; ++t) {
      const auto& mu = ms[static_cast<size_t>(rng.range(0, 24))];
      const auto& nu = ms[static_cast<size_t>(rng.range(0, 24))];
      AtomicMeasure cl = classical_convolve(mu, nu);
      MomentVector fr = free_convolve_moments(mu, nu, 12);
      for (long k = 1; k <= 6 && ok; ++k)
        ok = cl.moment(2 * k) >= fr.entry[static_cast<size_t>(2 * k)];
    }
    c.record("even classical moments dominate free moments through order 12, 20 pairs", ok);
  }

  // Quadratic-form positivity evidence: localized moment matrices of the
  // comparison measure over its support box are exactly PSD.
  {
    bool ok = true;
    for (int t = 0; t < 12 && ok; ++t) {
      const auto& mu = ms[static_cast<size_t>((2 * t) % 25)];
      const auto& nu = ms[static_cast<size_t>((2 * t + 9) % 25)];
      CcmMomentTable table = ccm_moment_table(mu, nu, 6);
      auto mhull = mu.support_hull();
      auto nhull = nu.support_hull();

      // Monomial basis s^i t^j with i + j <= 2.
      std::vector<std::pair<long, long>> basis;
      for (long i = 0; i <= 2; ++i)
        for (long j = 0; i + j <= 2; ++j) basis.emplace_back(i, j);

      // Localizers: 1, (s - lo)(hi - s), (t - lo)(hi - t).
      std::vector<BivarPoly> locs;
      locs.push_back(BivarPoly{{{0, 0}, Rat(1)}});
      {
        BivarPoly g;
        g[{0, 0}] = -mhull.first * mhull.second;
        g[{1, 0}] = mhull.first + mhull.second;
        g[{2, 0}] = Rat(-1);
        locs.push_back(g);
      }
      {
        BivarPoly g;
        g[{0, 0}] = -nhull.first * nhull.second;
        g[{0, 1}] = nhull.first + nhull.second;
        g[{0, 2}] = Rat(-1);
        locs.push_back(g);
      }

      for (const auto& g : locs) {
        const size_t nb = basis.size();
        std::vector<std::vector<Rat>> mat(nb, std::vector<Rat>(nb, Rat(0)));
        for (size_t r = 0; r < nb; ++r)
          for (size_t s = 0; s < nb; ++s) {
            Rat acc(0);
            for (const auto& term : g) {
              long ii = basis[r].first + basis[s].first + term.first.first;
              long jj = basis[r].second + basis[s].second + term.first.second;
              if (ii + jj > table.order) throw std::logic_error("ccm table too small");
              acc += term.second * table.value[static_cast<size_t>(ii)][static_cast<size_t>(jj)];
            }
            mat[r][s] = acc;
          }
        if (!psd_exact(mat)) ok = false;
      }
    }
    c.record("localized comparison moment matrices are exactly PSD, 12 pairs", ok);
  }

  // Leading-order functional normalization: the quartic monomial gives 4 Var.
  {
    bool ok = true;
    Poly t4 = {Rat(0), Rat(0), Rat(0), Rat(0), Rat(1)};
    for (const auto& mu : ms) {
      if (leading_order_functional(mu, t4) != 4 * mu.variance()) ok = false;
    }
    c.record("leading-order functional of t^4 equals 4 Var, 25 measures", ok);
  }

  // Pointwise nonnegativity of the comparison density at random interior
  // points (numerical route).
  {
    bool ok = true;
    std::ostringstream why;
    int done = 0;
    for (int t = 0; t < 25 && done < 2; ++t) {
      const auto& mu = ms[static_cast<size_t>(rng.range(0, 24))];
      const auto& nu = ms[static_cast<size_t>(rng.range(0, 24))];
      if (mu.size() < 2 || nu.size() < 2) continue;
      ++done;
      auto mh = mu.support_hull();
      auto nh = nu.support_hull();
      double mlo = (mh.first).get_d(), mhi = (mh.second).get_d();
      double nlo = (nh.first).get_d(), nhi = (nh.second).get_d();
      for (int q = 0; q < 4 && ok; ++q) {
        double s = mlo + (mhi - mlo) * (0.15 + 0.7 * rng.unit());
        double tt = nlo + (nhi - nlo) * (0.15 + 0.7 * rng.unit());
        try {
          double w = w_density(mu, nu, s, tt, 1e-7);
          if (!(w >= -1e-9)) {
            ok = false;
            why << "w(" << s << "," << tt << ")=" << w;
          }
        } catch (const QuadratureError& e) {
          ok = false;
          why << "quadrature did not settle: " << e.what();
        }
      }
    }
    c.record("comparison density nonnegative at random interior points, 2 pairs", ok, why.str());
  }
}

}  // namespace

VerifyReport run_verify_suite(const std::string& suite, std::uint64_t seed, std::ostream& out) {
  Checker c{out};
  bool any = false;
  if (suite == "identities" || suite == "all") {
    any = true;
    out << "suite: identities (seed " << seed << ")\n";
    Rng rng(seed ^ 0x1d1e5ULL);
    suite_identities(c, rng);
  }
  if (suite == "spectral" || suite == "all") {
    any = true;
    out << "suite: spectral (seed " << seed << ")\n";
    Rng rng(seed ^ 0x51e17ULL);
    suite_spectral(c, rng);
  }
  if (suite == "ccm" || suite == "all") {
    any = true;
    out << "suite: ccm (seed " << seed << ")\n";
    Rng rng(seed ^ 0xcc0ULL);
    suite_ccm(c, rng);
  }
  if (!any) throw std::invalid_argument("unknown verify suite: " + suite);
  out << "checks: " << c.checks << ", failures: " << c.failures << "\n";
  return VerifyReport{c.checks, c.failures};
}

}  // namespace freeconv
