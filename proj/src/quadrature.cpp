// SPDX-License-Identifier: Apache-2.0
#include "freeconv/quadrature.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

namespace freeconv {

namespace {

std::vector<QNode> compute_gauss_legendre(int n) {
  // Newton iteration on P_n with the usual Chebyshev-flavored initial guess.
  std::vector<QNode> nodes(static_cast<size_t>(n));
  const double pi = std::acos(-1.0);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(pi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      pp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * pp * pp);
    nodes[static_cast<size_t>(i)] = {-x, w};
    nodes[static_cast<size_t>(n - 1 - i)] = {x, w};
  }
  return nodes;
}

}  // namespace

const std::vector<QNode>& gauss_legendre(int n) {
  static std::map<int, std::vector<QNode>> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, compute_gauss_legendre(n)).first;
  return it->second;
}

std::vector<QNode> gl_nodes(double lo, double hi, int n) {
  const auto& base = gauss_legendre(n);
  std::vector<QNode> out(base.size());
  const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
  for (size_t i = 0; i < base.size(); ++i) {
    out[i] = {mid + half * base[i].x, half * base[i].w};
  }
  return out;
}

std::vector<QNode> cos_gl_nodes(double lo, double hi, int n) {
  const auto& base = gauss_legendre(n);
  std::vector<QNode> out(base.size());
  const double pi = std::acos(-1.0);
  const double len = hi - lo;
  for (size_t i = 0; i < base.size(); ++i) {
    const double t = 0.5 * pi * (base[i].x + 1.0);
    out[i] = {lo + 0.5 * len * (1.0 - std::cos(t)), base[i].w * 0.25 * pi * len * std::sin(t)};
  }
  return out;
}

double integrate(const std::function<double(double)>& f, const std::vector<QNode>& nodes) {
  double acc = 0.0;
  for (const auto& q : nodes) acc += q.w * f(q.x);
  return acc;
}

double integrate_piece_adaptive(const std::function<double(double)>& f, double lo, double hi,
                                double tol, int depth, double tol_floor) {
  const double want = std::max(tol, tol_floor);
  const double coarse = integrate(f, cos_gl_nodes(lo, hi, 24));
  const double fine = integrate(f, cos_gl_nodes(lo, hi, 48));
  if (std::abs(fine - coarse) <= want) return fine;
  if (depth >= 18) {
    throw QuadratureError("piecewise quadrature failed to converge", fine,
                          std::abs(fine - coarse));
  }
  // tol / sqrt(2) per child: bounded total over the tree, reachable targets
  // down a refinement ladder (see the matching inner-cell integrator).
  const double mid = 0.5 * (lo + hi);
  const double child_tol = tol * 0.7071067811865476;
  return integrate_piece_adaptive(f, lo, mid, child_tol, depth + 1, tol_floor) +
         integrate_piece_adaptive(f, mid, hi, child_tol, depth + 1, tol_floor);
}

CosineSeries::CosineSeries(const std::vector<double>& q) {
  if (q.size() < 3) throw std::invalid_argument("cosine series needs at least 3 samples");
  const size_t n = q.size();
  const double pi = std::acos(-1.0);
  c_.assign(n, 0.0);
  for (size_t m = 0; m < n; ++m) {
    double acc = 0.0;
    for (size_t j = 0; j < n; ++j) {
      acc += q[j] * std::cos(pi * static_cast<double>(m) * (static_cast<double>(j) + 0.5) /
                             static_cast<double>(n));
    }
    c_[m] = (m == 0 ? 1.0 : 2.0) * acc / static_cast<double>(n);
  }
}

double CosineSeries::integral_prefix(double t) const {
  double acc = c_[0] * t;
  // sin(m t) by the Chebyshev-style recurrence to avoid per-term trig calls.
  const double c1 = std::cos(t);
  double sprev = 0.0, scur = std::sin(t);
  for (size_t m = 1; m < c_.size(); ++m) {
    acc += c_[m] * scur / static_cast<double>(m);
    const double snext = 2.0 * c1 * scur - sprev;
    sprev = scur;
    scur = snext;
  }
  return acc;
}

double CosineSeries::integral_full() const {
  return c_[0] * std::acos(-1.0);
}

std::vector<double> chebyshev_real_roots(const std::function<double(double)>& f, double lo,
                                         double hi, int degree) {
  const int n = degree;
  const double pi = std::acos(-1.0);
  const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
  // Sample at Chebyshev extrema and take the cosine transform.
  std::vector<double> fv(static_cast<size_t>(n) + 1);
  double scale = 0.0;
  for (int j = 0; j <= n; ++j) {
    const double xj = std::cos(pi * j / n);
    fv[static_cast<size_t>(j)] = f(mid + half * xj);
    scale = std::max(scale, std::abs(fv[static_cast<size_t>(j)]));
  }
  if (scale == 0.0) return {};
  std::vector<double> a(static_cast<size_t>(n) + 1, 0.0);
  for (int k = 0; k <= n; ++k) {
    double acc = 0.0;
    for (int j = 0; j <= n; ++j) {
      const double term = fv[static_cast<size_t>(j)] * std::cos(pi * j * k / n);
      acc += (j == 0 || j == n) ? 0.5 * term : term;
    }
    a[static_cast<size_t>(k)] = 2.0 * acc / n;
  }
  a[0] *= 0.5;
  a[static_cast<size_t>(n)] *= 0.5;
  // Trim negligible leading coefficients before building the colleague
  // matrix.
  int top = n;
  while (top > 0 && std::abs(a[static_cast<size_t>(top)]) < 1e-13 * scale) --top;
  if (top == 0) return {};
  Eigen::MatrixXd colleague = Eigen::MatrixXd::Zero(top, top);
  if (top == 1) {
    colleague(0, 0) = -a[0] / a[1];
  } else {
    colleague(0, 1) = 1.0;
    for (int i = 1; i < top; ++i) {
      colleague(i, i - 1) = 0.5;
      if (i + 1 < top) colleague(i, i + 1) = 0.5;
    }
    for (int k = 0; k < top; ++k) {
      colleague(top - 1, k) -= 0.5 * a[static_cast<size_t>(k)] / a[static_cast<size_t>(top)];
    }
  }
  Eigen::EigenSolver<Eigen::MatrixXd> es(colleague, /*computeEigenvectors=*/false);
  std::vector<double> roots;
  for (int i = 0; i < top; ++i) {
    const std::complex<double> z = es.eigenvalues()(i);
    if (std::abs(z.imag()) > 1e-6) continue;
    const double x = z.real();
    if (x < -1.0 - 1e-9 || x > 1.0 + 1e-9) continue;
    roots.push_back(mid + half * std::min(1.0, std::max(-1.0, x)));
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

}  // namespace freeconv
