// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>

#include "freeconv/comparison.hpp"
#include "freeconv/measure.hpp"
#include "freeconv/spectral.hpp"

namespace freeconv {

// Measure exchange format: {"atoms":[{"x":"-1","p":"1/2"}, ...]}. Each x/p
// is a decimal integer token or a "p/q" string; floating point values are
// rejected and the weights must sum to exactly 1. Throws
// std::invalid_argument on any violation.
AtomicMeasure measure_from_json(const std::string& text);
std::string measure_to_json(const AtomicMeasure& mu);

// Space-separated "x:p" atom list, e.g. "-2:1/4 0:1/2 2:1/4".
std::string atoms_to_text(const AtomicMeasure& mu);

// CSV with the given three column names, one row per cell in row-major order
// with the second coordinate fastest, 17 significant digits.
std::string grid_to_csv(const DensityGrid& grid, const std::string& header);
DensityGrid grid_from_csv(const std::string& text);

// {"order":N,"entries":[{"nmu":i,"nnu":j,"value":"p/q"}, ...]}, entries in
// lexicographic (nmu, nnu) order over nmu + nnu <= order.
std::string ccm_table_to_json(const CcmMomentTable& table);
CcmMomentTable ccm_table_from_json(const std::string& text);

}  // namespace freeconv
