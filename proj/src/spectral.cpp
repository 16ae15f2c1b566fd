// SPDX-License-Identifier: Apache-2.0
#include "freeconv/spectral.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <stdexcept>

#include "freeconv/moment_cumulant.hpp"
#include "freeconv/quadrature.hpp"
#include "freeconv/rational.hpp"
#include "spectral_internal.hpp"

namespace freeconv {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Roots of the monic real polynomial z^d + c[d-1] z^{d-1} + ... + c[0].
std::vector<std::complex<double>> monic_real_roots(const std::vector<double>& c) {
  const long d = static_cast<long>(c.size());
  std::vector<std::complex<double>> roots;
  if (d == 0) return roots;
  if (d == 1) {
    roots.emplace_back(-c[0], 0.0);
    return roots;
  }
  if (d == 2) {
    const double b = c[1];
    const double disc = b * b - 4.0 * c[0];
    if (disc >= 0.0) {
      const double s = std::sqrt(disc);
      // Evaluate the larger-magnitude root first to avoid cancellation.
      const double r1 = (b >= 0.0) ? 0.5 * (-b - s) : 0.5 * (-b + s);
      const double r2 = (r1 != 0.0) ? c[0] / r1 : 0.5 * (-b + (b >= 0.0 ? s : -s));
      roots.emplace_back(r1, 0.0);
      roots.emplace_back(r2, 0.0);
    } else {
      const double im = 0.5 * std::sqrt(-disc);
      roots.emplace_back(-0.5 * b, im);
      roots.emplace_back(-0.5 * b, -im);
    }
    return roots;
  }
  Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(d, d);
  for (long i = 1; i < d; ++i) comp(i, i - 1) = 1.0;
  for (long i = 0; i < d; ++i) comp(i, d - 1) = -c[i];
  Eigen::EigenSolver<Eigen::MatrixXd> es(comp, false);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("companion eigenvalue iteration did not converge");
  roots.reserve(d);
  for (long i = 0; i < d; ++i) roots.push_back(es.eigenvalues()(i));
  return roots;
}

// Monic characteristic polynomial of (A - a) (vv* - b) for the embedded
// measure, via the rank-one determinant identity: with c_j = x_j - a,
//   det(z - M) = prod_j (z + b c_j) - sum_i p_i c_i prod_{j != i} (z + b c_j).
// Returned ascending, coefficient of z^d omitted (it is 1).
std::vector<double> embed_charpoly(const MeasureEmbedding& emb, double a, double b) {
  const long d = emb.dim();
  std::vector<double> c(d), r(d);
  for (long j = 0; j < d; ++j) {
    c[j] = emb.x[j] - a;
    r[j] = b * c[j];
  }
  // P = prod_j (z + r_j), ascending, length d + 1.
  std::vector<double> pp(d + 1, 0.0);
  pp[0] = 1.0;
  for (long j = 0; j < d; ++j) {
    for (long k = j + 1; k >= 1; --k) pp[k] = pp[k - 1] + r[j] * pp[k];
    pp[0] *= r[j];
  }
  // Q = sum_i p_i c_i * (P / (z + r_i)) by synthetic division.
  std::vector<double> qq(d, 0.0), quot(d);
  for (long i = 0; i < d; ++i) {
    const double w = emb.p[i] * c[i];
    if (w == 0.0) continue;
    quot[d - 1] = 1.0;
    for (long k = d - 1; k >= 1; --k) quot[k - 1] = pp[k] - r[i] * quot[k];
    for (long k = 0; k < d; ++k) qq[k] += w * quot[k];
  }
  std::vector<double> out(d);
  for (long k = 0; k < d; ++k) out[k] = pp[k] - (k < d ? qq[k] : 0.0);
  return out;
}

double imag_abs_sum(const std::vector<std::complex<double>>& z) {
  double s = 0.0;
  for (const auto& v : z) s += std::abs(v.imag());
  return s;
}

long count_nonreal_pairs(const std::vector<std::complex<double>>& z, double thresh) {
  long n = 0;
  for (const auto& v : z)
    if (v.imag() > thresh) ++n;
  return n;
}

double spectrum_scale(const std::vector<std::complex<double>>& z) {
  double m = 0.0;
  for (const auto& v : z) m = std::max(m, std::abs(v));
  return 1.0 + m;
}

// Real part of prod_{i<j} (z_i - z_j)^2: vanishes exactly at eigenvalue
// collisions, i.e. where the nonreal-pair pattern can change.
double spectrum_discriminant(const std::vector<std::complex<double>>& z) {
  std::complex<double> prod(1.0, 0.0);
  const long n = static_cast<long>(z.size());
  for (long i = 0; i < n; ++i)
    for (long j = i + 1; j < n; ++j) {
      const std::complex<double> diff = z[i] - z[j];
      prod *= diff * diff;
    }
  return prod.real();
}

// Pair count with a detection threshold far above the rounding noise of
// clustered spectra (clusters appear e.g. where the second factor is close
// to a multiple of a projector, and backward error then splits a multiple
// real eigenvalue into spurious slightly-complex copies).
long robust_pair_count(const std::vector<std::complex<double>>& z) {
  return count_nonreal_pairs(z, 3e-6 * spectrum_scale(z));
}

// Maximal subintervals of [blo, bhi] on which the spectrum carries nonreal
// pairs, additionally cut wherever the pair count changes, so that sigma is
// analytic on each cell with at worst square-root endpoint behavior. The
// pair count is sampled on a dense grid augmented with the real roots of a
// Chebyshev proxy of the spectral discriminant (which catches narrow lobes
// the grid can step over); every transition is then sharpened by bisection
// on the count predicate, which stays reliable even where the discriminant
// values drown in rounding noise.
std::vector<detail::BCell> active_cells_generic(
    const std::function<std::vector<std::complex<double>>(double)>& eig_at, double blo,
    double bhi, long disc_degree) {
  std::vector<detail::BCell> cells;
  if (!(bhi > blo)) return cells;
  const double range = bhi - blo;

  std::vector<double> probes;
  const long n_uniform = 512;
  probes.reserve(n_uniform + 10);
  probes.push_back(blo);
  for (long i = 0; i < n_uniform; ++i)
    probes.push_back(blo + range * (static_cast<double>(i) + 0.5) / n_uniform);
  probes.push_back(bhi);
  auto disc = [&](double b) { return spectrum_discriminant(eig_at(b)); };
  for (double r : chebyshev_real_roots(disc, blo, bhi, disc_degree)) {
    const double off = 1e-9 * range;
    if (r - off > blo) probes.push_back(r - off);
    if (r + off < bhi) probes.push_back(r + off);
  }
  std::sort(probes.begin(), probes.end());

  std::vector<long> counts(probes.size());
  for (size_t i = 0; i < probes.size(); ++i) counts[i] = robust_pair_count(eig_at(probes[i]));

  // Sharpens the transition point between two probes with differing counts.
  auto refine = [&](double lo, long count_lo, double hi) {
    for (int it = 0; it < 60 && hi - lo > 1e-15 * range; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (robust_pair_count(eig_at(mid)) == count_lo)
        lo = mid;
      else
        hi = mid;
    }
    return 0.5 * (lo + hi);
  };

  const double min_width = 1e-13 * range;
  double run_lo = blo;
  long run_count = counts.front();
  auto close_run = [&](double run_hi) {
    if (run_count > 0 && run_hi - run_lo > min_width) cells.push_back({run_lo, run_hi});
  };
  for (size_t i = 1; i < probes.size(); ++i) {
    if (counts[i] == counts[i - 1]) continue;
    const double cut = refine(probes[i - 1], counts[i - 1], probes[i]);
    close_run(cut);
    run_lo = cut;
    run_count = counts[i];
  }
  close_run(bhi);
  return cells;
}

// Integrates the vector integrand over one analytic cell with the
// half-cosine map, comparing 24- and 40-point rules and bisecting on
// disagreement. Accumulates into acc.
void cell_integrate_vec(const std::function<void(double, double, std::vector<double>&)>& add_at,
                        double lo, double hi, long gdim, double tol, double tol_floor, int depth,
                        std::vector<double>& acc) {
  const double want = std::max(tol, tol_floor);
  std::vector<double> coarse(gdim, 0.0), fine(gdim, 0.0);
  for (const auto& nd : cos_gl_nodes(lo, hi, 24)) add_at(nd.x, nd.w, coarse);
  for (const auto& nd : cos_gl_nodes(lo, hi, 40)) add_at(nd.x, nd.w, fine);
  double gap = 0.0;
  for (long g = 0; g < gdim; ++g) gap = std::max(gap, std::abs(fine[g] - coarse[g]));
  // The cap is a safety net only: the budget floor is absolute while the
  // disagreement of the two rules keeps shrinking under bisection, so any
  // cell whose defect sits above rounding noise settles before the cap.
  // Interior branch points missed by the cell scan (pair-count dips
  // narrower than the probe spacing) need the deepest chases.
  if (gap <= want || depth >= 30) {
    if (gap > want) {
      if (std::getenv("FC_QUAD_DEBUG"))
        std::fprintf(stderr, "[settle-fail] cell [%.17g, %.17g] width %.3e gap %.3e want %.3e\n",
                     lo, hi, hi - lo, gap, want);
      throw QuadratureError("inner integral did not settle on a cell", fine[0], gap);
    }
    for (long g = 0; g < gdim; ++g) acc[g] += fine[g];
    return;
  }
  // Children get tol / sqrt(2) rather than tol / 2: over any bisection tree
  // the leaf budgets then sum to a small constant multiple of tol, while a
  // refinement ladder chasing a nearby branch point keeps a reachable
  // target instead of halving it away. The floor is absolute: below it,
  // eigenvalue rounding jitter dominates and refinement cannot help.
  const double mid = 0.5 * (lo + hi);
  const double child_tol = tol * 0.7071067811865476;
  cell_integrate_vec(add_at, lo, mid, gdim, child_tol, tol_floor, depth + 1, acc);
  cell_integrate_vec(add_at, mid, hi, gdim, child_tol, tol_floor, depth + 1, acc);
}

}  // namespace

namespace detail {

std::vector<BCell> embed_active_b_cells(const MeasureEmbedding& emb, double a) {
  const long d = emb.dim();
  if (d <= 1) return {};
  if (a <= emb.x.front() || a >= emb.x.back()) return {};
  auto eig_at = [&](double b) { return monic_real_roots(embed_charpoly(emb, a, b)); };
  return active_cells_generic(eig_at, 0.0, 1.0, 2 * d * (d - 1) + 4);
}

double embed_sigma(const MeasureEmbedding& emb, double a, double b) {
  return imag_abs_sum(monic_real_roots(embed_charpoly(emb, a, b))) / (2.0 * kPi);
}

namespace {

// Doubling ladder on one smooth span; the former whole-domain driver.
std::vector<std::vector<double>> outer_cos_span(
    double alo, double ahi, long kmax, long gdim,
    const std::function<std::vector<double>(double)>& inner, double tol, const char* what) {
  std::vector<std::vector<double>> result(kmax + 1, std::vector<double>(gdim, 0.0));
  if (!(ahi > alo)) return result;
  const double half = 0.5 * (ahi - alo);
  const auto& base = gauss_legendre(16);
  std::vector<std::vector<double>> prev;
  double last_gap = 0.0;
  for (int level = 0; level <= 6; ++level) {
    const long panels = 8L << level;
    std::vector<std::vector<double>> cur(kmax + 1, std::vector<double>(gdim, 0.0));
    for (long p = 0; p < panels; ++p) {
      const double tlo = kPi * static_cast<double>(p) / panels;
      const double thi = kPi * static_cast<double>(p + 1) / panels;
      const double tc = 0.5 * (tlo + thi), th = 0.5 * (thi - tlo);
      for (const auto& nd : base) {
        const double theta = tc + th * nd.x;
        const double a = alo + half * (1.0 - std::cos(theta));
        const double jac = half * std::sin(theta) * th * nd.w;
        std::vector<double> g = inner(a);
        double ak = jac;
        for (long k = 0; k <= kmax; ++k) {
          for (long j = 0; j < gdim; ++j) cur[k][j] += ak * g[j];
          ak *= a;
        }
      }
    }
    if (level > 0) {
      double gap = 0.0;
      for (long k = 0; k <= kmax; ++k)
        for (long j = 0; j < gdim; ++j) gap = std::max(gap, std::abs(cur[k][j] - prev[k][j]));
      last_gap = gap;
      if (gap <= tol) return cur;
    }
    prev = std::move(cur);
  }
  throw QuadratureError(std::string(what) + ": outer refinement did not settle",
                        prev.empty() ? 0.0 : prev[0][0], last_gap);
}

}  // namespace

std::vector<std::vector<double>> outer_cos_composite(
    double alo, double ahi, long kmax, long gdim,
    const std::function<std::vector<double>(double)>& inner, double tol, const char* what,
    const std::vector<double>& cuts) {
  std::vector<std::vector<double>> result(kmax + 1, std::vector<double>(gdim, 0.0));
  if (!(ahi > alo)) return result;
  const double range = ahi - alo;
  std::vector<double> edges{alo};
  std::vector<double> inside(cuts);
  std::sort(inside.begin(), inside.end());
  for (double c : inside)
    if (c > edges.back() + 1e-9 * range && c < ahi - 1e-9 * range) edges.push_back(c);
  edges.push_back(ahi);
  const double span_tol = tol / static_cast<double>(edges.size() - 1);
  for (size_t s = 0; s + 1 < edges.size(); ++s) {
    auto part = outer_cos_span(edges[s], edges[s + 1], kmax, gdim, inner, span_tol, what);
    for (long k = 0; k <= kmax; ++k)
      for (long j = 0; j < gdim; ++j) result[k][j] += part[k][j];
  }
  return result;
}

std::vector<std::vector<double>> embed_gegenbauer_table_spectral(const AtomicMeasure& mu,
                                                                 long lmax, long nmax,
                                                                 double tol) {
  MeasureEmbedding emb = embed_measure(mu);
  std::vector<std::vector<double>> zero(lmax + 1, std::vector<double>(nmax + 1, 0.0));
  if (emb.dim() <= 1) return zero;
  const double alo = emb.x.front(), ahi = emb.x.back();
  const double amax = std::max(1.0, std::max(std::abs(alo), std::abs(ahi)));
  const double inner_tol =
      0.05 * tol / ((ahi - alo) * std::pow(amax, static_cast<double>(nmax)));
  const long gdim = lmax + 1;
  auto inner = [&](double a) {
    std::vector<double> acc(gdim, 0.0);
    auto cells = detail::embed_active_b_cells(emb, a);
    if (cells.empty()) return acc;
    auto add_at = [&](double b, double w, std::vector<double>& out) {
      const double sigma = detail::embed_sigma(emb, a, b);
      if (sigma == 0.0) return;
      const double y = 2.0 * b - 1.0;
      // C_l at y for all l <= lmax via the three-term recurrence.
      double cm2 = 1.0, cm1 = y;
      for (long l = 0; l <= lmax; ++l) {
        double cl;
        if (l == 0)
          cl = cm2;
        else if (l == 1)
          cl = cm1;
        else {
          cl = ((2.0 * l + 1.0) * y * cm1 - (l - 1.0) * cm2) / (l + 2.0);
          cm2 = cm1;
          cm1 = cl;
        }
        out[l] += w * sigma * cl;
      }
    };
    const double cell_tol = inner_tol / static_cast<double>(cells.size());
    for (const auto& cell : cells)
      cell_integrate_vec(add_at, cell.lo, cell.hi, gdim, cell_tol, 0.02 * cell_tol, 0, acc);
    return acc;
  };
  // The a-profile loses smoothness where a crosses an interior atom, so
  // integrate atom gap by atom gap.
  std::vector<double> cuts(emb.x.begin() + 1, emb.x.end() - 1);
  auto table = detail::outer_cos_composite(alo, ahi, nmax, gdim, inner, tol,
                                           "component table", cuts);
  // outer_cos_composite returns [n][l]; callers want [l][n].
  std::vector<std::vector<double>> out(lmax + 1, std::vector<double>(nmax + 1, 0.0));
  for (long n = 0; n <= nmax; ++n)
    for (long l = 0; l <= lmax; ++l) out[l][n] = table[n][l];
  return out;
}

}  // namespace detail

HermitianMatrix::HermitianMatrix(const CMat& raw) {
  if (raw.rows() != raw.cols() || raw.rows() == 0)
    throw std::invalid_argument("hermitian matrix must be square and nonempty");
  const double scale = 1.0 + raw.cwiseAbs().maxCoeff();
  const double dev = (raw - raw.adjoint()).cwiseAbs().maxCoeff();
  if (dev > 1e-12 * scale)
    throw std::invalid_argument("matrix is not hermitian within tolerance");
  m_ = 0.5 * (raw + raw.adjoint());
  Eigen::SelfAdjointEigenSolver<CMat> es(m_, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("hermitian eigenvalue iteration did not converge");
  lo_ = es.eigenvalues().minCoeff();
  hi_ = es.eigenvalues().maxCoeff();
}

double HermitianMatrix::op_norm() const { return std::max(std::abs(lo_), std::abs(hi_)); }

MeasureEmbedding embed_measure(const AtomicMeasure& mu) {
  MeasureEmbedding emb;
  for (const auto& at : mu.atoms()) {
    emb.x.push_back(at.x.get_d());
    emb.p.push_back(at.p.get_d());
  }
  return emb;
}

CMat MeasureEmbedding::a_matrix() const {
  const long d = dim();
  CMat a = CMat::Zero(d, d);
  for (long i = 0; i < d; ++i) a(i, i) = x[i];
  return a;
}

CMat MeasureEmbedding::b_matrix() const {
  const long d = dim();
  CMat b(d, d);
  for (long i = 0; i < d; ++i)
    for (long j = 0; j < d; ++j) b(i, j) = std::sqrt(p[i] * p[j]);
  return b;
}

std::vector<std::complex<double>> general_eigenvalues(const CMat& m) {
  Eigen::ComplexEigenSolver<CMat> es(m, false);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("eigenvalue iteration did not converge");
  std::vector<std::complex<double>> out(m.rows());
  for (long i = 0; i < m.rows(); ++i) out[i] = es.eigenvalues()(i);
  return out;
}

std::vector<std::complex<double>> embed_eigenvalues(const MeasureEmbedding& emb, double a,
                                                    double b) {
  return monic_real_roots(embed_charpoly(emb, a, b));
}

double omega_density(const HermitianMatrix& a_mat, const HermitianMatrix& b_mat, double a,
                     double b) {
  if (a < a_mat.eig_lo() || a > a_mat.eig_hi() || b < b_mat.eig_lo() || b > b_mat.eig_hi())
    return 0.0;
  const long d = a_mat.dim();
  if (b_mat.dim() != d) throw std::invalid_argument("matrix dimensions differ");
  CMat m = (a_mat.mat() - a * CMat::Identity(d, d)) * (b_mat.mat() - b * CMat::Identity(d, d));
  return imag_abs_sum(general_eigenvalues(m)) / (2.0 * kPi);
}

double omega_density(const MeasureEmbedding& emb, double a, double b) {
  if (emb.dim() == 0) throw std::invalid_argument("empty embedding");
  if (a < emb.x.front() || a > emb.x.back() || b < 0.0 || b > 1.0) return 0.0;
  if (emb.dim() == 1) return 0.0;
  return detail::embed_sigma(emb, a, b);
}

long nonreal_pair_count(const HermitianMatrix& a_mat, const HermitianMatrix& b_mat, double a,
                        double b) {
  const long d = a_mat.dim();
  if (b_mat.dim() != d) throw std::invalid_argument("matrix dimensions differ");
  CMat m = (a_mat.mat() - a * CMat::Identity(d, d)) * (b_mat.mat() - b * CMat::Identity(d, d));
  const double thresh =
      1e-9 * (1.0 + (a_mat.op_norm() + std::abs(a)) * (b_mat.op_norm() + std::abs(b)));
  return count_nonreal_pairs(general_eigenvalues(m), thresh);
}

long nonreal_pair_count(const MeasureEmbedding& emb, double a, double b) {
  if (emb.dim() <= 1) return 0;
  auto z = monic_real_roots(embed_charpoly(emb, a, b));
  double xmax = 0.0;
  for (double t : emb.x) xmax = std::max(xmax, std::abs(t));
  const double thresh = 1e-9 * (1.0 + (xmax + std::abs(a)) * (1.0 + std::abs(b)));
  return count_nonreal_pairs(z, thresh);
}

double omega_trace_moment(const HermitianMatrix& a_mat, const HermitianMatrix& b_mat, long k,
                          long l) {
  if (k < 0 || l < 0) throw std::invalid_argument("moment orders must be nonnegative");
  if (k + l > 16) throw std::invalid_argument("trace moment supported for k + l <= 16");
  const long d = a_mat.dim();
  if (b_mat.dim() != d) throw std::invalid_argument("matrix dimensions differ");
  std::vector<CMat> ap(k + 3), bp(l + 3);
  ap[0] = CMat::Identity(d, d);
  bp[0] = CMat::Identity(d, d);
  for (long i = 1; i <= k + 2; ++i) ap[i] = ap[i - 1] * a_mat.mat();
  for (long i = 1; i <= l + 2; ++i) bp[i] = bp[i - 1] * b_mat.mat();

  // All compositions of total into exactly parts positive parts.
  auto compositions = [](long total, long parts) {
    std::vector<std::vector<long>> out;
    std::vector<long> cur(parts);
    std::function<void(long, long)> rec = [&](long pos, long left) {
      if (pos == parts - 1) {
        cur[pos] = left;
        out.push_back(cur);
        return;
      }
      for (long v = 1; v <= left - (parts - 1 - pos); ++v) {
        cur[pos] = v;
        rec(pos + 1, left - v);
      }
    };
    if (parts >= 1 && total >= parts) rec(0, total);
    return out;
  };

  double total = 0.0;
  const long nmax = std::min(k, l) + 2;
  for (long n = 1; n <= nmax; ++n) {
    auto ci = compositions(k + 2, n);
    auto cj = compositions(l + 2, n);
    std::complex<double> s(0.0, 0.0);
    for (const auto& ivec : ci)
      for (const auto& jvec : cj) {
        CMat m = CMat::Identity(d, d);
        for (long t = 0; t < n; ++t) m = m * ap[ivec[t]] * bp[jvec[t]];
        s += m.trace();
      }
    const double denom = binomial(k + l + 1, n - 1).get_d();
    const double term = s.real() / denom;
    total += ((n - 1) % 2 == 0) ? term : -term;
  }
  return total / (static_cast<double>(k + l + 2) * static_cast<double>(k + l + 3));
}

Rat omega_embed_moment_exact(const AtomicMeasure& mu, long k, long l) {
  if (k < 0 || l < 0) throw std::invalid_argument("moment orders must be nonnegative");
  MomentVector m = measure_moments(mu, k + 2);
  auto table = composition_sum_table(m.entry, k + 2);
  Rat acc = 0;
  for (long n = 1; n <= k + 2; ++n) {
    Int num = binomial(l + 1, n - 1);
    if (num == 0) continue;
    Rat coef = Rat(num) / Rat(binomial(k + l + 1, n - 1));
    if ((n - 1) % 2 != 0) coef = -coef;
    acc += coef * table[k + 2][n];
  }
  Rat result = acc / Rat((k + l + 2) * (k + l + 3));
  result.canonicalize();
  return result;
}

std::vector<std::vector<double>> omega_quadrature_moments(const HermitianMatrix& a_mat,
                                                          const HermitianMatrix& b_mat,
                                                          long kmax, long lmax, double tol) {
  if (kmax < 0 || lmax < 0) throw std::invalid_argument("moment orders must be nonnegative");
  const long d = a_mat.dim();
  if (b_mat.dim() != d) throw std::invalid_argument("matrix dimensions differ");
  std::vector<std::vector<double>> zero(kmax + 1, std::vector<double>(lmax + 1, 0.0));
  const double alo = a_mat.eig_lo(), ahi = a_mat.eig_hi();
  const double blo = b_mat.eig_lo(), bhi = b_mat.eig_hi();
  if (!(ahi > alo) || !(bhi > blo)) return zero;

  const double amax = std::max(1.0, std::max(std::abs(alo), std::abs(ahi)));
  const double inner_tol =
      0.05 * tol / ((ahi - alo) * std::pow(amax, static_cast<double>(kmax)));
  const long gdim = lmax + 1;
  const CMat id = CMat::Identity(d, d);
  auto inner = [&](double a) {
    std::vector<double> acc(gdim, 0.0);
    CMat am = a_mat.mat() - a * id;
    auto eig_at = [&](double b) {
      CMat m = am * (b_mat.mat() - b * id);
      return general_eigenvalues(m);
    };
    auto cells = active_cells_generic(eig_at, blo, bhi, d * (d - 1) + 4);
    if (cells.empty()) return acc;
    auto add_at = [&](double b, double w, std::vector<double>& out) {
      const double sigma = imag_abs_sum(eig_at(b)) / (2.0 * kPi);
      if (sigma == 0.0) return;
      double bl = 1.0;
      for (long l = 0; l <= lmax; ++l) {
        out[l] += w * sigma * bl;
        bl *= b;
      }
    };
    const double cell_tol = inner_tol / static_cast<double>(cells.size());
    for (const auto& cell : cells)
      cell_integrate_vec(add_at, cell.lo, cell.hi, gdim, cell_tol, 0.02 * cell_tol, 0, acc);
    return acc;
  };
  // The a-profile loses smoothness where a crosses an eigenvalue of the
  // first factor, so integrate eigenvalue gap by eigenvalue gap.
  Eigen::SelfAdjointEigenSolver<CMat> es(a_mat.mat(), Eigen::EigenvaluesOnly);
  std::vector<double> cuts;
  for (long i = 0; i < d; ++i) {
    const double v = es.eigenvalues()(i);
    if (v > alo && v < ahi) cuts.push_back(v);
  }
  return detail::outer_cos_composite(alo, ahi, kmax, gdim, inner, tol, "pair moment table", cuts);
}

double omega_quadrature_moment(const HermitianMatrix& a_mat, const HermitianMatrix& b_mat,
                               long k, long l, double tol) {
  return omega_quadrature_moments(a_mat, b_mat, k, l, tol)[k][l];
}

std::vector<std::pair<double, double>> omega_b_intervals(const MeasureEmbedding& emb, double a) {
  auto cells = detail::embed_active_b_cells(emb, a);
  std::vector<std::pair<double, double>> out;
  const double glue = 1e-12;
  for (const auto& cell : cells) {
    if (!out.empty() && cell.lo - out.back().second <= glue)
      out.back().second = cell.hi;
    else
      out.emplace_back(cell.lo, cell.hi);
  }
  return out;
}

double DensityGrid::mass() const {
  double s = 0.0;
  for (double v : value) s += v;
  return s * cell_da() * cell_db();
}

DensityGrid omega_grid(const AtomicMeasure& mu, int na, int nb) {
  if (na <= 0 || nb <= 0) throw std::invalid_argument("grid dimensions must be positive");
  MeasureEmbedding emb = embed_measure(mu);
  if (emb.dim() == 0) throw std::invalid_argument("empty measure");
  DensityGrid grid;
  grid.a_lo = emb.x.front();
  grid.a_hi = emb.x.back();
  grid.b_lo = 0.0;
  grid.b_hi = 1.0;
  grid.na = na;
  grid.nb = nb;
  grid.value.assign(static_cast<size_t>(na) * nb, 0.0);
  if (emb.dim() <= 1) return grid;
  for (int i = 0; i < na; ++i) {
    const double a = grid.a_at(i);
    // Restrict work to the active cells of this column.
    auto cells = detail::embed_active_b_cells(emb, a);
    if (cells.empty()) continue;
    for (int j = 0; j < nb; ++j) {
      const double b = grid.b_at(j);
      bool inside = false;
      for (const auto& cell : cells)
        if (b >= cell.lo && b <= cell.hi) {
          inside = true;
          break;
        }
      if (inside) grid.value[i * nb + j] = detail::embed_sigma(emb, a, b);
    }
  }
  return grid;
}

}  // namespace freeconv
