// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <ostream>
#include <string>

namespace freeconv {

// Tally of a self-verification run.
struct VerifyReport {
  int checks = 0;
  int failures = 0;
  bool ok() const { return failures == 0; }
};

// Runs one of the built-in cross-check suites and writes one [PASS]/[FAIL]
// line per check to `out`.
//
//   "identities"  exact combinatorial and special-function identities that
//                 the library leans on, validated on randomized instances;
//   "spectral"    agreement between the independent routes to the
//                 subordination-defect density and its moments;
//   "ccm"         agreement between the independent routes to the
//                 convolution comparison measure, plus positivity evidence;
//   "all"         the three suites in the order above.
//
// The seed makes the randomized instances reproducible: identical
// (suite, seed) inputs produce identical output bytes.
VerifyReport run_verify_suite(const std::string& suite, std::uint64_t seed, std::ostream& out);

}  // namespace freeconv
