// SPDX-License-Identifier: Apache-2.0
//
// Shared helpers for the unit and acceptance tests: a small deterministic
// generator for reproducible random instances, independent of the library's
// own verification suites.
#pragma once

#include <cstdint>
#include <set>
#include <vector>

#include "freeconv/measure.hpp"
#include "freeconv/rational.hpp"

namespace testutil {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ULL) {}

  std::uint64_t u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  long range(long lo, long hi) {
    return lo + static_cast<long>(u64() % static_cast<std::uint64_t>(hi - lo + 1));
  }

  double unit() { return static_cast<double>(u64() >> 11) * 0x1.0p-53; }

  freeconv::Rat rat(long max_num, long max_den) {
    freeconv::Rat r(range(-max_num, max_num), range(1, max_den));
    r.canonicalize();
    return r;
  }

  freeconv::Rat nonzero_rat(long max_num, long max_den) {
    for (;;) {
      freeconv::Rat r = rat(max_num, max_den);
      if (r != 0) return r;
    }
  }

  // Random atomic measure with rational atoms in [-2, 2] and positive
  // rational weights.
  freeconv::AtomicMeasure measure(long min_atoms, long max_atoms) {
    const long n = range(min_atoms, max_atoms);
    std::set<freeconv::Rat> xs;
    while (static_cast<long>(xs.size()) < n) {
      long den = range(1, 4);
      freeconv::Rat x(range(-2 * den, 2 * den), den);
      x.canonicalize();
      xs.insert(x);
    }
    std::vector<freeconv::Rat> points(xs.begin(), xs.end());
    std::vector<freeconv::Rat> weights;
    for (long i = 0; i < n; ++i) weights.push_back(freeconv::Rat(range(1, 9)));
    return freeconv::make_measure(points, weights);
  }

  // As above, but guaranteed nondegenerate (at least two atoms, so the
  // variance is strictly positive).
  freeconv::AtomicMeasure spread_measure(long max_atoms) { return measure(2, max_atoms); }

 private:
  std::uint64_t state_;
};

inline freeconv::AtomicMeasure symmetric_bernoulli() {
  using freeconv::Rat;
  return freeconv::make_measure({Rat(-1), Rat(1)}, {Rat(1), Rat(1)});
}

}  // namespace testutil
