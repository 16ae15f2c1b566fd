// SPDX-License-Identifier: Apache-2.0
#include "freeconv/comparison.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>
#include <utility>
#include <vector>

#include "freeconv/moment_cumulant.hpp"
#include "freeconv/quadrature.hpp"
#include "freeconv/special_functions.hpp"
#include "spectral_internal.hpp"

namespace freeconv {

namespace {

// I_l(t^n) from a composition-sum table of raw moments covering order n + 2.
Rat i_from_moment_table(const std::vector<std::vector<Rat>>& m_table, long l, long n) {
  if (n < l) return Rat(0);
  Rat pref = Rat(factorial(n)) / (Rat(factorial(n + l + 3)) * Rat(factorial(n - l)));
  Rat acc = 0;
  for (long k = 1; k <= l + 2; ++k) {
    // k <= l + 2 <= n + 2 keeps every factorial argument nonnegative.
    Rat term = Rat(factorial(n - k + 2)) / Rat(factorial(k));
    term *= Rat(factorial(l + k)) / Rat(factorial(l - k + 2));
    term *= m_table[n + 2][k];
    if ((k - 1) % 2 != 0) term = -term;
    acc += term;
  }
  Rat out = pref * acc;
  out.canonicalize();
  return out;
}

void check_ln(long l, long n) {
  if (l < 0 || n < 0) throw std::invalid_argument("component functional needs l, n >= 0");
}

}  // namespace

Rat i_functional(const AtomicMeasure& mu, long l, long n) {
  check_ln(l, n);
  if (n < l) return Rat(0);
  MomentVector m = measure_moments(mu, n + 2);
  auto table = composition_sum_table(m.entry, n + 2);
  return i_from_moment_table(table, l, n);
}

Rat i_functional_cumulant_route(const AtomicMeasure& mu, long l, long n) {
  check_ln(l, n);
  if (n < l) return Rat(0);
  CumulantVector kappa = measure_cumulants(mu, n + 2);
  auto table = composition_sum_table(kappa.entry, n + 2);
  Rat acc = 0;
  for (long k = 1; k <= n - l + 1; ++k) {
    Rat term = Rat(factorial(n + 2 - k)) /
               (Rat(factorial(n - k - l + 1)) * Rat(factorial(n - k + l + 4)));
    term *= Rat(factorial(n)) / Rat(factorial(k));
    term *= table[n + 2][k];
    acc += term;
  }
  acc.canonicalize();
  return acc;
}

std::vector<std::vector<Rat>> i_functional_table(const AtomicMeasure& mu, long lmax, long nmax) {
  if (lmax < 0 || nmax < 0) throw std::invalid_argument("table bounds must be nonnegative");
  MomentVector m = measure_moments(mu, nmax + 2);
  auto table = composition_sum_table(m.entry, nmax + 2);
  std::vector<std::vector<Rat>> out(lmax + 1, std::vector<Rat>(nmax + 1, Rat(0)));
  for (long l = 0; l <= lmax; ++l)
    for (long n = l; n <= nmax; ++n) out[l][n] = i_from_moment_table(table, l, n);
  return out;
}

double i_functional_spectral(const AtomicMeasure& mu, long l, long n, double tol) {
  check_ln(l, n);
  return detail::embed_gegenbauer_table_spectral(mu, l, n, tol)[l][n];
}

std::vector<std::vector<double>> i_functional_spectral_table(const AtomicMeasure& mu, long lmax,
                                                             long nmax, double tol) {
  if (lmax < 0 || nmax < 0) throw std::invalid_argument("table bounds must be nonnegative");
  return detail::embed_gegenbauer_table_spectral(mu, lmax, nmax, tol);
}

Rat ccm_moment_series(const AtomicMeasure& mu, const AtomicMeasure& nu, long nmu, long nnu) {
  check_ln(nmu, nnu);
  MomentVector mm = measure_moments(mu, nmu + 2);
  MomentVector mn = measure_moments(nu, nnu + 2);
  auto tm = composition_sum_table(mm.entry, nmu + 2);
  auto tn = composition_sum_table(mn.entry, nnu + 2);
  Rat acc = 0;
  for (long l = 0; l <= std::min(nmu, nnu); ++l) {
    Rat term = Rat(2 * l + 3) * i_from_moment_table(tm, l, nmu) * i_from_moment_table(tn, l, nnu);
    if (l % 2 != 0) term = -term;
    acc += term;
  }
  acc.canonicalize();
  return acc;
}

Rat ccm_moment_via_cumulant_difference(const AtomicMeasure& mu, const AtomicMeasure& nu, long nmu,
                              long nnu) {
  check_ln(nmu, nnu);
  CumulantVector km = measure_cumulants(mu, nmu + 2);
  CumulantVector kn = measure_cumulants(nu, nnu + 2);
  auto tm = composition_sum_table(km.entry, nmu + 2);
  auto tn = composition_sum_table(kn.entry, nnu + 2);
  Rat acc = 0;
  const Rat nf = Rat(factorial(nmu)) * Rat(factorial(nnu));
  for (long kmu = 1; kmu <= nmu + 2; ++kmu) {
    for (long knu = 1; knu <= nnu + 2; ++knu) {
      Rat bracket = reciprocal_factorial(nmu + 3 - kmu) * reciprocal_factorial(nnu + 3 - knu) -
                    reciprocal_factorial(nmu + nnu + 5 - kmu - knu);
      if (bracket == 0) continue;
      Rat term = nf / (Rat(factorial(kmu)) * Rat(factorial(knu)));
      term *= bracket * tm[nmu + 2][kmu] * tn[nnu + 2][knu];
      acc += term;
    }
  }
  acc.canonicalize();
  return acc;
}

CcmMomentTable ccm_moment_table(const AtomicMeasure& mu, const AtomicMeasure& nu, long order) {
  if (order < 0) throw std::invalid_argument("table order must be nonnegative");
  CcmMomentTable out;
  out.order = order;
  out.value.assign(order + 1, std::vector<Rat>(order + 1, Rat(0)));
  const long lmax = order / 2;
  auto imu = i_functional_table(mu, lmax, order);
  auto inu = i_functional_table(nu, lmax, order);
  for (long a = 0; a <= order; ++a) {
    for (long b = 0; a + b <= order; ++b) {
      Rat acc = 0;
      for (long l = 0; l <= std::min(a, b); ++l) {
        Rat term = Rat(2 * l + 3) * imu[l][a] * inu[l][b];
        if (l % 2 != 0) term = -term;
        acc += term;
      }
      acc.canonicalize();
      out.value[a][b] = acc;
    }
  }
  return out;
}

Rat ccm_apply(const CcmMomentTable& table, const BivarPoly& q) {
  Rat acc = 0;
  for (const auto& entry : q) {
    const long i = entry.first.first, j = entry.first.second;
    if (entry.second == 0) continue;
    if (i < 0 || j < 0 || i + j > table.order)
      throw std::invalid_argument("monomial exceeds comparison-moment table order");
    acc += entry.second * table.value[i][j];
  }
  acc.canonicalize();
  return acc;
}

Rat apply_ccm_to_shifted_poly(const AtomicMeasure& mu, const AtomicMeasure& nu, const Poly& p,
                              const Rat& a, const Rat& b) {
  if (a == 0 || b == 0) throw std::invalid_argument("scale factors must be nonzero");
  Poly p4 = poly_nth_derivative(p, 4);
  const long deg = poly_degree(p4);
  if (deg < 0) return Rat(0);
  BivarPoly q = substitute_linear_form(p4, a, b);
  CcmMomentTable table = ccm_moment_table(mu, nu, deg);
  Rat out = a * a * b * b * ccm_apply(table, q);
  out.canonicalize();
  return out;
}

Rat convolution_gap(const AtomicMeasure& mu, const AtomicMeasure& nu, const Poly& p,
                    const Rat& a, const Rat& b) {
  if (a == 0 || b == 0) throw std::invalid_argument("scale factors must be nonzero");
  const long deg = poly_degree(p);
  if (deg < 0) return Rat(0);
  AtomicMeasure ma = mu.scaled(a);
  AtomicMeasure mb = nu.scaled(b);
  Rat classical = classical_convolve(ma, mb).expect(p);
  MomentVector fm = free_convolve_moments(ma, mb, deg);
  Rat freeside = 0;
  for (long k = 0; k <= deg; ++k) freeside += p[k] * fm.entry[k];
  Rat out = classical - freeside;
  out.canonicalize();
  return out;
}

Rat leading_order_functional(const AtomicMeasure& mu, const Poly& f) {
  Poly f2 = poly_nth_derivative(f, 2);
  Rat first = mu.expect(f2);
  Poly f1 = poly_derivative(f);
  Rat second = 0;
  const auto& atoms = mu.atoms();
  for (const auto& ai : atoms) {
    for (const auto& aj : atoms) {
      Rat dd = 0;
      std::vector<Rat> nodes{ai.x, aj.x};
      for (long k = 0; k < static_cast<long>(f1.size()); ++k) {
        if (f1[k] == 0) continue;
        dd += f1[k] * divided_difference_power(nodes, k);
      }
      second += ai.p * aj.p * dd;
    }
  }
  Rat out = first - second;
  out.canonicalize();
  return out;
}

namespace {

// Chebyshev coefficients of the degree-(n-1) interpolant through samples at
// the first-kind points x_j = cos(pi (j + 1/2) / n), followed by the
// coefficient form of its antiderivative normalized to vanish at x = -1.
std::vector<double> cheb_antiderivative(const std::vector<double>& g) {
  const int n = static_cast<int>(g.size());
  const double pi = std::acos(-1.0);
  std::vector<double> a(n, 0.0);
  for (int m = 0; m < n; ++m) {
    double acc = 0.0;
    for (int j = 0; j < n; ++j)
      acc += g[j] * std::cos(pi * m * (j + 0.5) / n);
    a[m] = (m == 0 ? 1.0 : 2.0) * acc / n;
  }
  std::vector<double> anti(n + 1, 0.0);
  for (int k = 1; k <= n; ++k) {
    const double below = (k == 1) ? 2.0 * a[0] : a[k - 1];
    const double above = (k + 1 < n) ? a[k + 1] : 0.0;
    anti[k] = (below - above) / (2.0 * k);
  }
  double at_minus_one = 0.0;
  double sign = -1.0;
  for (int k = 1; k <= n; ++k) {
    at_minus_one += sign * anti[k];
    sign = -sign;
  }
  anti[0] = -at_minus_one;
  return anti;
}

double clenshaw(const std::vector<double>& a, double x) {
  double b1 = 0.0, b2 = 0.0;
  for (int k = static_cast<int>(a.size()) - 1; k >= 1; --k) {
    const double t = 2.0 * x * b1 - b2 + a[k];
    b2 = b1;
    b1 = t;
  }
  return x * b1 - b2 + a[0];
}

// Cached inner-variable antiderivatives of one measure's density column on
// one refined subinterval of an analytic cell: Chebyshev antiderivatives of
// sigma/(1-b) and sigma/b under a map adapted to the subinterval's position.
// A square-root substitution at a cell edge turns the square-root vanishing
// of sigma there into an analytic integrand (and, when the cell hugs a
// kernel pole at b = 0 or b = 1, keeps the pole outside a usable Bernstein
// ellipse once the leaf width is comparable to the pole distance); an affine
// map suffices in the interior, where sigma is analytic.
struct WLobe {
  enum class Map { linear, sqrt_lo, sqrt_hi };
  double lo = 0.0, hi = 0.0;
  Map map = Map::linear;
  std::vector<double> anti1, anti2;
  double full1 = 0.0, full2 = 0.0;

  // Chebyshev argument of the inner coordinate u clamped into [lo, hi].
  double x_of(double u) const {
    double r = 0.0;
    const double w = hi - lo;
    switch (map) {
      case Map::linear:
        r = (u - lo) / w;
        break;
      case Map::sqrt_lo:
        r = std::sqrt(std::max((u - lo) / w, 0.0));
        break;
      case Map::sqrt_hi:
        r = std::sqrt(std::max((hi - u) / w, 0.0));
        break;
    }
    return std::max(-1.0, std::min(1.0, 2.0 * r - 1.0));
  }

  // integral over [lo, u] of sigma/(1-b) resp. sigma/b
  double prefix1(double u) const { return prefix(anti1, full1, u); }
  double prefix2(double u) const { return prefix(anti2, full2, u); }

 private:
  double prefix(const std::vector<double>& anti, double full, double u) const {
    const double g = clenshaw(anti, x_of(u));
    return map == Map::sqrt_hi ? full - g : g;
  }
};

struct WProfile {
  std::vector<WLobe> lobes;

  bool empty() const { return lobes.empty(); }

  // int_0^u sigma(b) / (1 - b) db
  double lower1(double u) const {
    double acc = 0.0;
    for (const auto& lb : lobes) {
      if (u >= lb.hi) {
        acc += lb.full1;
        continue;
      }
      if (u > lb.lo) acc += lb.prefix1(u);
      break;
    }
    return std::max(acc, 0.0);
  }

  // int_u^1 sigma(b) / b db
  double upper2(double u) const {
    double acc = 0.0;
    for (auto it = lobes.rbegin(); it != lobes.rend(); ++it) {
      if (u <= it->lo) {
        acc += it->full2;
        continue;
      }
      if (u < it->hi) acc += std::max(it->full2 - it->prefix2(u), 0.0);
      break;
    }
    return std::max(acc, 0.0);
  }

  // The outer integrand is piecewise-analytic with breakpoints exactly
  // where the complementary coordinate crosses a leaf boundary (the stored
  // antiderivatives are only C^0 across joins).
  std::vector<double> leaf_edges() const {
    std::vector<double> out;
    out.reserve(2 * lobes.size());
    for (const auto& lb : lobes) {
      out.push_back(lb.lo);
      out.push_back(lb.hi);
    }
    return out;
  }
};

// Samples both kernel integrands under the leaf's map (sharing the sigma
// evaluations) and stores their Chebyshev antiderivatives.
WLobe make_leaf(const MeasureEmbedding& emb, double t, double lo, double hi, WLobe::Map map,
                int n) {
  WLobe lb;
  lb.lo = lo;
  lb.hi = hi;
  lb.map = map;
  const double pi = std::acos(-1.0);
  const double w = hi - lo;
  std::vector<double> g1(n), g2(n);
  for (int j = 0; j < n; ++j) {
    const double chi = 0.5 * (1.0 + std::cos(pi * (j + 0.5) / n));
    double b = 0.0, jac = 0.0;
    switch (map) {
      case WLobe::Map::linear:
        b = lo + w * chi;
        jac = 0.5 * w;
        break;
      case WLobe::Map::sqrt_lo:
        b = lo + w * chi * chi;
        jac = w * chi;
        break;
      case WLobe::Map::sqrt_hi:
        b = hi - w * chi * chi;
        jac = w * chi;
        break;
    }
    const double sg = detail::embed_sigma(emb, t, b);
    g1[j] = sg * jac / (1.0 - b);
    g2[j] = sg * jac / b;
  }
  lb.anti1 = cheb_antiderivative(g1);
  lb.anti2 = cheb_antiderivative(g2);
  lb.full1 = clenshaw(lb.anti1, 1.0);
  lb.full2 = clenshaw(lb.anti2, 1.0);
  return lb;
}

// Appends settled leaves covering [leaf_lo, leaf_hi] inside an analytic
// cell, bisecting until the 48- and 96-point expansions agree on the full
// and two interior prefix integrals of both kernels. Bisection refines
// geometrically toward a kernel pole hugging a cell edge; children touching
// a cell edge keep its square-root map, interior children turn affine.
// Error budget: a leaf of width w gets tol_cell * sqrt(w / W), so the
// per-cell total stays bounded by a small multiple of tol_cell at any
// refinement depth.
void add_profile_leaves(const MeasureEmbedding& emb, double t, double cell_width, double leaf_lo,
                        double leaf_hi, WLobe::Map map, double tol_cell, int depth,
                        std::vector<WLobe>& out) {
  const double width = leaf_hi - leaf_lo;
  const double tol_leaf = std::max(tol_cell * std::sqrt(width / cell_width), 0.02 * tol_cell);

  WLobe coarse = make_leaf(emb, t, leaf_lo, leaf_hi, map, 48);
  WLobe fine = make_leaf(emb, t, leaf_lo, leaf_hi, map, 96);
  const double scale1 = 1.0 + std::abs(fine.full1);
  const double scale2 = 1.0 + std::abs(fine.full2);
  double gap = std::max(std::abs(coarse.full1 - fine.full1) / scale1,
                        std::abs(coarse.full2 - fine.full2) / scale2);
  for (double frac : {0.35, 0.75}) {
    const double u = leaf_lo + frac * width;
    gap = std::max(gap, std::abs(coarse.prefix1(u) - fine.prefix1(u)) / scale1);
    gap = std::max(gap, std::abs(coarse.prefix2(u) - fine.prefix2(u)) / scale2);
  }
  if (gap <= tol_leaf) {
    // Structural anchor against an independent node family, at a loose
    // tolerance: catches a wrong cell or kernel, not quadrature error.
    double g1 = 0.0, g2 = 0.0;
    for (const auto& nd : gauss_legendre(24)) {
      const double chi = 0.5 * (1.0 + nd.x);
      double b = 0.0, jac = 0.0;
      switch (map) {
        case WLobe::Map::linear:
          b = leaf_lo + width * chi;
          jac = 0.5 * width;
          break;
        case WLobe::Map::sqrt_lo:
          b = leaf_lo + width * chi * chi;
          jac = width * chi;
          break;
        case WLobe::Map::sqrt_hi:
          b = leaf_hi - width * chi * chi;
          jac = width * chi;
          break;
      }
      const double sg = detail::embed_sigma(emb, t, b);
      g1 += nd.w * sg * jac / (1.0 - b);
      g2 += nd.w * sg * jac / b;
    }
    if (std::abs(g1 - fine.full1) <= 1e-4 * scale1 && std::abs(g2 - fine.full2) <= 1e-4 * scale2) {
      out.push_back(std::move(fine));
      return;
    }
  }
  if (depth >= 30)
    throw QuadratureError("density profile did not settle on a cell", fine.full1, gap);
  const double mid = 0.5 * (leaf_lo + leaf_hi);
  const WLobe::Map left_map = (map == WLobe::Map::sqrt_lo) ? WLobe::Map::sqrt_lo
                                                           : WLobe::Map::linear;
  const WLobe::Map right_map = (map == WLobe::Map::sqrt_hi) ? WLobe::Map::sqrt_hi
                                                            : WLobe::Map::linear;
  add_profile_leaves(emb, t, cell_width, leaf_lo, mid, left_map, tol_cell, depth + 1, out);
  add_profile_leaves(emb, t, cell_width, mid, leaf_hi, right_map, tol_cell, depth + 1, out);
}

WProfile build_w_profile(const MeasureEmbedding& emb, double t, double tol) {
  WProfile prof;
  const double tol_series = std::max(1e-12, 0.01 * tol);
  auto cells = detail::embed_active_b_cells(emb, t);
  if (cells.empty()) return prof;
  for (const auto& cell : cells) {
    // sigma carries square-root behavior at both cell edges, so each edge
    // gets its own square-root-mapped half from the start.
    const double mid = 0.5 * (cell.lo + cell.hi);
    add_profile_leaves(emb, t, cell.hi - cell.lo, cell.lo, mid, WLobe::Map::sqrt_lo, tol_series,
                       1, prof.lobes);
    add_profile_leaves(emb, t, cell.hi - cell.lo, mid, cell.hi, WLobe::Map::sqrt_hi, tol_series,
                       1, prof.lobes);
  }
  return prof;
}

// Outer integrand at fixed first coordinate: sigma_mu(p) times the cached
// kernel integrals of the second measure, split where the complementary
// coordinate crosses a profile cell endpoint.
double w_outer(const MeasureEmbedding& emb_mu, double s, const std::vector<detail::BCell>& cells,
               const WProfile& prof, double tol) {
  if (cells.empty() || prof.empty()) return 0.0;
  std::vector<double> splits;
  for (double e : prof.leaf_edges()) splits.push_back(1.0 - e);
  std::sort(splits.begin(), splits.end());

  auto f = [&](double p) {
    const double sg = detail::embed_sigma(emb_mu, s, p);
    if (sg == 0.0) return 0.0;
    const double u = 1.0 - p;
    return sg * (prof.lower1(u) / (1.0 - p) + prof.upper2(u) / p);
  };

  std::vector<std::pair<double, double>> pieces;
  for (const auto& cell : cells) {
    double lo = cell.lo;
    for (double sp : splits) {
      if (sp > lo + 1e-14 && sp < cell.hi - 1e-14) {
        pieces.emplace_back(lo, sp);
        lo = sp;
      }
    }
    pieces.emplace_back(lo, cell.hi);
  }

  const double tol_piece = 0.25 * tol / static_cast<double>(pieces.size());
  double total = 0.0;
  for (const auto& piece : pieces)
    total += integrate_piece_adaptive(f, piece.first, piece.second, tol_piece, 0,
                                      0.02 * tol_piece);
  return total;
}

}  // namespace

double w_density(const AtomicMeasure& mu, const AtomicMeasure& nu, double s, double t,
                 double tol) {
  if (!(tol > 0)) throw std::invalid_argument("tolerance must be positive");
  MeasureEmbedding em = embed_measure(mu);
  MeasureEmbedding en = embed_measure(nu);
  if (em.dim() <= 1 || en.dim() <= 1) return 0.0;
  if (s <= em.x.front() || s >= em.x.back() || t <= en.x.front() || t >= en.x.back()) return 0.0;
  WProfile prof = build_w_profile(en, t, tol);
  auto cells = detail::embed_active_b_cells(em, s);
  return w_outer(em, s, cells, prof, tol);
}

DensityGrid ccm_density_grid(const AtomicMeasure& mu, const AtomicMeasure& nu, int na, int nb,
                             double tol, int threads) {
  if (na <= 0 || nb <= 0) throw std::invalid_argument("grid dimensions must be positive");
  if (!(tol > 0)) throw std::invalid_argument("tolerance must be positive");
  threads = std::max(1, std::min(threads, 64));
  MeasureEmbedding em = embed_measure(mu);
  MeasureEmbedding en = embed_measure(nu);
  if (em.dim() == 0 || en.dim() == 0) throw std::invalid_argument("empty measure");

  DensityGrid grid;
  grid.a_lo = em.x.front();
  grid.a_hi = em.x.back();
  grid.b_lo = en.x.front();
  grid.b_hi = en.x.back();
  grid.na = na;
  grid.nb = nb;
  grid.value.assign(static_cast<size_t>(na) * nb, 0.0);
  if (em.dim() <= 1 || en.dim() <= 1) return grid;

  // Column profiles depend only on the second coordinate: build once.
  std::vector<WProfile> profiles(nb);
  for (int j = 0; j < nb; ++j) profiles[j] = build_w_profile(en, grid.b_at(j), tol);

  std::exception_ptr failure;
  std::mutex failure_mu;
  auto run_rows = [&](int i_begin, int i_end) {
    try {
      for (int i = i_begin; i < i_end; ++i) {
        const double s = grid.a_at(i);
        auto cells = detail::embed_active_b_cells(em, s);
        if (cells.empty()) continue;
        for (int j = 0; j < nb; ++j)
          grid.value[static_cast<size_t>(i) * nb + j] = w_outer(em, s, cells, profiles[j], tol);
      }
    } catch (...) {
      std::lock_guard<std::mutex> lock(failure_mu);
      if (!failure) failure = std::current_exception();
    }
  };

  if (threads == 1) {
    run_rows(0, na);
  } else {
    std::vector<std::thread> pool;
    const int chunk = (na + threads - 1) / threads;
    for (int w = 0; w < threads; ++w) {
      const int b = w * chunk, e = std::min(na, b + chunk);
      if (b < e) pool.emplace_back(run_rows, b, e);
    }
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);
  return grid;
}

}  // namespace freeconv
