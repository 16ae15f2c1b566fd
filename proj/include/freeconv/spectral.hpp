// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>

#include <complex>
#include <utility>
#include <vector>

#include "freeconv/measure.hpp"
#include "freeconv/rational.hpp"

namespace freeconv {

using CMat = Eigen::MatrixXcd;

// Hermitian matrix wrapper: validates near-hermiticity on construction and
// stores the exact symmetrization together with its spectral hull.
class HermitianMatrix {
 public:
  explicit HermitianMatrix(const CMat& raw);
  const CMat& mat() const { return m_; }
  long dim() const { return m_.rows(); }
  double eig_lo() const { return lo_; }
  double eig_hi() const { return hi_; }
  double op_norm() const;

 private:
  CMat m_;
  double lo_ = 0.0, hi_ = 0.0;
};

// Diagonal-plus-rank-one picture of an atomic measure: A = diag(x_i) and
// the unit vector v with v_i = sqrt(p_i), so <A^k v, v> = m_k.
struct MeasureEmbedding {
  std::vector<double> x;
  std::vector<double> p;
  long dim() const { return static_cast<long>(x.size()); }
  CMat a_matrix() const;
  CMat b_matrix() const;  // v v*
};

MeasureEmbedding embed_measure(const AtomicMeasure& mu);

// Eigenvalues of a general complex matrix; throws std::runtime_error if the
// QR sweep in the backend fails to converge.
std::vector<std::complex<double>> general_eigenvalues(const CMat& m);

// Eigenvalues of (A - aI)(vv* - bI) through the rank-one determinant
// identity: roots of prod_j (z + b c_j) - sum_i p_i c_i prod_{j != i}
// (z + b c_j) with c_j = x_j - a. O(d^2) buildup plus one small companion
// eigenproblem.
std::vector<std::complex<double>> embed_eigenvalues(const MeasureEmbedding& emb, double a,
                                                    double b);

// sum_i |Im lambda_i| of (A - aI)(B - bI), scaled by 1/(2 pi); zero outside
// the product of the spectral hulls.
double omega_density(const HermitianMatrix& A, const HermitianMatrix& B, double a, double b);
double omega_density(const MeasureEmbedding& emb, double a, double b);

// Conjugate pairs with imaginary part above 1e-9 (1 + |A| |B|).
long nonreal_pair_count(const HermitianMatrix& A, const HermitianMatrix& B, double a, double b);
long nonreal_pair_count(const MeasureEmbedding& emb, double a, double b);

// Moment of the density against a^k b^l via the alternating trace formula
// over pairs of compositions. Exact in exact arithmetic; here evaluated in
// floating point for general Hermitian input.
double omega_trace_moment(const HermitianMatrix& A, const HermitianMatrix& B, long k, long l);

// Same moment for a measure embedding, computed exactly: the traces reduce
// to products of raw moments, collapsing to composition sums.
Rat omega_embed_moment_exact(const AtomicMeasure& mu, long k, long l);

// Independent numerical route: adaptive tensor quadrature of the pointwise
// density over the hull box. Composite Gauss-Legendre panels under the
// half-cosine map, refined until successive levels differ by < tol; interior
// real/complex transition curves are cut cell-by-cell in the inner variable.
std::vector<std::vector<double>> omega_quadrature_moments(const HermitianMatrix& A,
                                                          const HermitianMatrix& B, long kmax,
                                                          long lmax, double tol);
double omega_quadrature_moment(const HermitianMatrix& A, const HermitianMatrix& B, long k, long l,
                               double tol);

// Maximal intervals of b in [0, 1] on which (A - aI)(vv* - bI) carries a
// nonreal pair, for fixed a. Endpoints are located by bisection on the
// thresholded pair count, seeded from a dense scan plus the real roots of
// the characteristic-polynomial discriminant.
std::vector<std::pair<double, double>> omega_b_intervals(const MeasureEmbedding& emb, double a);

// Rectangular sample of a bivariate density at cell centers:
// a_i = a_lo + (i + 1/2) da, b_j likewise, value[i * nb + j] (b fastest).
struct DensityGrid {
  double a_lo = 0.0, a_hi = 0.0;
  double b_lo = 0.0, b_hi = 0.0;
  int na = 0, nb = 0;
  std::vector<double> value;

  double cell_da() const { return (a_hi - a_lo) / na; }
  double cell_db() const { return (b_hi - b_lo) / nb; }
  double a_at(int i) const { return a_lo + (i + 0.5) * cell_da(); }
  double b_at(int j) const { return b_lo + (j + 0.5) * cell_db(); }
  double mass() const;
};

DensityGrid omega_grid(const AtomicMeasure& mu, int na, int nb);

}  // namespace freeconv
