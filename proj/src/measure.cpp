// SPDX-License-Identifier: Apache-2.0
#include "freeconv/measure.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace freeconv {

Rat AtomicMeasure::moment(long k) const {
  if (k < 0) throw std::invalid_argument("moment order must be nonnegative");
  Rat acc(0);
  for (const auto& a : atoms_) acc += a.p * pow_rat(a.x, k);
  return acc;
}

std::vector<Rat> AtomicMeasure::raw_moments(long n) const {
  if (n < 0) throw std::invalid_argument("moment order must be nonnegative");
  std::vector<Rat> m(static_cast<size_t>(n) + 1, Rat(0));
  m[0] = 1;
  // One running power per atom rather than repeated pow calls.
  std::vector<Rat> xp(atoms_.size(), Rat(1));
  for (long k = 1; k <= n; ++k) {
    Rat acc(0);
    for (size_t i = 0; i < atoms_.size(); ++i) {
      xp[i] *= atoms_[i].x;
      acc += atoms_[i].p * xp[i];
    }
    m[static_cast<size_t>(k)] = acc;
  }
  return m;
}

Rat AtomicMeasure::mean() const { return moment(1); }

Rat AtomicMeasure::variance() const {
  Rat m1 = moment(1);
  return moment(2) - m1 * m1;
}

std::pair<Rat, Rat> AtomicMeasure::support_hull() const {
  return {atoms_.front().x, atoms_.back().x};
}

Rat AtomicMeasure::expect(const Poly& p) const {
  Rat acc(0);
  for (const auto& a : atoms_) acc += a.p * poly_eval(p, a.x);
  return acc;
}

AtomicMeasure AtomicMeasure::scaled(const Rat& c) const {
  if (c == 0) return point_mass(Rat(0));
  std::vector<Atom> out;
  out.reserve(atoms_.size());
  for (const auto& a : atoms_) out.push_back({c * a.x, a.p});
  if (c < 0) std::reverse(out.begin(), out.end());
  return AtomicMeasure(std::move(out));
}

AtomicMeasure measure_from_weighted_atoms(std::vector<Atom> atoms, bool normalize) {
  if (atoms.empty()) throw std::invalid_argument("measure needs at least one atom");
  std::map<Rat, Rat> merged;
  for (auto& a : atoms) {
    // Canonicalize before any comparison or arithmetic: two-argument
    // construction can leave the sign on the denominator, which would make
    // the positivity test and the merge arithmetic silently wrong.
    a.x.canonicalize();
    a.p.canonicalize();
    if (a.p <= 0) throw std::invalid_argument("atom weights must be positive");
    merged[a.x] += a.p;
  }
  Rat total(0);
  for (const auto& [x, p] : merged) total += p;
  if (normalize) {
    if (total == 0) throw std::invalid_argument("total mass must be positive");
  } else if (total != 1) {
    throw std::invalid_argument("atom weights must sum to exactly 1, got " + rat_to_string(total));
  }
  std::vector<Atom> out;
  out.reserve(merged.size());
  for (const auto& [x, p] : merged) out.push_back({x, normalize ? Rat(p / total) : p});
  return AtomicMeasure(std::move(out));
}

AtomicMeasure make_measure(const std::vector<Rat>& points, const std::vector<Rat>& weights) {
  if (points.size() != weights.size()) {
    throw std::invalid_argument("points and weights must have equal length");
  }
  std::vector<Atom> atoms;
  atoms.reserve(points.size());
  for (size_t i = 0; i < points.size(); ++i) atoms.push_back({points[i], weights[i]});
  return measure_from_weighted_atoms(std::move(atoms), /*normalize=*/true);
}

AtomicMeasure point_mass(const Rat& x) {
  return measure_from_weighted_atoms({{x, Rat(1)}}, /*normalize=*/false);
}

AtomicMeasure classical_convolve(const AtomicMeasure& mu, const AtomicMeasure& nu) {
  std::vector<Atom> atoms;
  atoms.reserve(mu.size() * nu.size());
  for (const auto& a : mu.atoms()) {
    for (const auto& b : nu.atoms()) atoms.push_back({a.x + b.x, a.p * b.p});
  }
  return measure_from_weighted_atoms(std::move(atoms), /*normalize=*/false);
}

}  // namespace freeconv
