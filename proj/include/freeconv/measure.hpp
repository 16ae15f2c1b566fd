// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <utility>
#include <vector>

#include "freeconv/polynomial.hpp"
#include "freeconv/rational.hpp"

namespace freeconv {

struct Atom {
  Rat x;  // location
  Rat p;  // weight, > 0
};

// Finitely supported probability measure with exact rational atoms.
// Invariants: atoms sorted by location, locations distinct, weights
// positive, weights sum to exactly 1.
class AtomicMeasure {
 public:
  const std::vector<Atom>& atoms() const { return atoms_; }
  size_t size() const { return atoms_.size(); }

  Rat moment(long k) const;
  // Raw moments m_0 = 1, m_1, ..., m_n.
  std::vector<Rat> raw_moments(long n) const;
  Rat mean() const;
  Rat variance() const;
  std::pair<Rat, Rat> support_hull() const;
  Rat expect(const Poly& p) const;

  // Pushforward under t -> c t; c = 0 collapses to the point mass at 0.
  AtomicMeasure scaled(const Rat& c) const;

 private:
  friend AtomicMeasure make_measure(const std::vector<Rat>&, const std::vector<Rat>&);
  friend AtomicMeasure measure_from_weighted_atoms(std::vector<Atom>, bool);
  explicit AtomicMeasure(std::vector<Atom> sorted_atoms) : atoms_(std::move(sorted_atoms)) {}
  std::vector<Atom> atoms_;
};

// Validates inputs, merges duplicate locations and normalizes the weights
// to total mass one. Throws std::invalid_argument on empty input or
// nonpositive weights.
AtomicMeasure make_measure(const std::vector<Rat>& points, const std::vector<Rat>& weights);

// As above but with the normalization step controlled by the caller: with
// normalize = false the weights must already sum to exactly 1.
AtomicMeasure measure_from_weighted_atoms(std::vector<Atom> atoms, bool normalize);

AtomicMeasure point_mass(const Rat& x);

// Law of X + Y for independent X ~ mu, Y ~ nu.
AtomicMeasure classical_convolve(const AtomicMeasure& mu, const AtomicMeasure& nu);

}  // namespace freeconv
