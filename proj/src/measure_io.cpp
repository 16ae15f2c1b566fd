// SPDX-License-Identifier: Apache-2.0
#include "freeconv/measure_io.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "freeconv/rational.hpp"

namespace freeconv {

namespace {

using json = nlohmann::ordered_json;

Rat rat_from_json_value(const json& v, const char* what) {
  if (v.is_string()) return rat_from_string(v.get<std::string>());
  if (v.is_number_integer() || v.is_number_unsigned()) {
    return Rat(Int(v.dump()));
  }
  throw std::invalid_argument(std::string(what) +
                              " must be a decimal integer or a \"p/q\" string");
}

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

double parse_double(const std::string& s, const char* what) {
  try {
    size_t pos = 0;
    double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument(std::string("bad numeric field in ") + what + ": " + s);
  }
}

}  // namespace

AtomicMeasure measure_from_json(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("measure JSON parse error: ") + e.what());
  }
  if (!root.is_object() || !root.contains("atoms"))
    throw std::invalid_argument("measure JSON must be an object with an \"atoms\" array");
  const json& arr = root["atoms"];
  if (!arr.is_array() || arr.empty())
    throw std::invalid_argument("\"atoms\" must be a nonempty array");
  std::vector<Atom> atoms;
  atoms.reserve(arr.size());
  for (const json& el : arr) {
    if (!el.is_object() || !el.contains("x") || !el.contains("p") || el.size() != 2)
      throw std::invalid_argument("each atom must be an object with exactly \"x\" and \"p\"");
    Atom at;
    at.x = rat_from_json_value(el["x"], "atom position");
    at.p = rat_from_json_value(el["p"], "atom weight");
    atoms.push_back(std::move(at));
  }
  return measure_from_weighted_atoms(std::move(atoms), /*normalize=*/false);
}

std::string measure_to_json(const AtomicMeasure& mu) {
  json arr = json::array();
  for (const auto& at : mu.atoms()) {
    arr.push_back({{"x", rat_to_string(at.x)}, {"p", rat_to_string(at.p)}});
  }
  json root;
  root["atoms"] = std::move(arr);
  return root.dump();
}

std::string atoms_to_text(const AtomicMeasure& mu) {
  std::ostringstream out;
  bool first = true;
  for (const auto& at : mu.atoms()) {
    if (!first) out << ' ';
    first = false;
    out << rat_to_string(at.x) << ':' << rat_to_string(at.p);
  }
  return out.str();
}

std::string grid_to_csv(const DensityGrid& grid, const std::string& header) {
  std::ostringstream out;
  out << header << '\n';
  for (int i = 0; i < grid.na; ++i) {
    const std::string a = format_double(grid.a_at(i));
    for (int j = 0; j < grid.nb; ++j) {
      out << a << ',' << format_double(grid.b_at(j)) << ','
          << format_double(grid.value[static_cast<size_t>(i) * grid.nb + j]) << '\n';
    }
  }
  return out.str();
}

DensityGrid grid_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("empty grid CSV");
  std::vector<double> av, bv, vv;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const size_t c1 = line.find(',');
    const size_t c2 = (c1 == std::string::npos) ? std::string::npos : line.find(',', c1 + 1);
    if (c2 == std::string::npos) throw std::invalid_argument("grid CSV row needs 3 columns");
    av.push_back(parse_double(line.substr(0, c1), "grid CSV"));
    bv.push_back(parse_double(line.substr(c1 + 1, c2 - c1 - 1), "grid CSV"));
    vv.push_back(parse_double(line.substr(c2 + 1), "grid CSV"));
  }
  if (vv.empty()) throw std::invalid_argument("grid CSV has no rows");
  // Second coordinate is fastest: nb = index where the first coordinate changes.
  size_t nb = 1;
  while (nb < av.size() && av[nb] == av[0]) ++nb;
  if (av.size() % nb != 0) throw std::invalid_argument("grid CSV is not rectangular");
  const size_t na = av.size() / nb;
  DensityGrid grid;
  grid.na = static_cast<int>(na);
  grid.nb = static_cast<int>(nb);
  const double da = (na > 1) ? (av[nb] - av[0]) : 1.0;
  const double db = (nb > 1) ? (bv[1] - bv[0]) : 1.0;
  grid.a_lo = av[0] - 0.5 * da;
  grid.a_hi = av[av.size() - 1] + 0.5 * da;
  grid.b_lo = bv[0] - 0.5 * db;
  grid.b_hi = bv[nb - 1] + 0.5 * db;
  grid.value = std::move(vv);
  return grid;
}

std::string ccm_table_to_json(const CcmMomentTable& table) {
  json entries = json::array();
  for (long i = 0; i <= table.order; ++i) {
    for (long j = 0; i + j <= table.order; ++j) {
      entries.push_back(
          {{"nmu", i}, {"nnu", j}, {"value", rat_to_string(table.value[i][j])}});
    }
  }
  json root;
  root["order"] = table.order;
  root["entries"] = std::move(entries);
  return root.dump();
}

CcmMomentTable ccm_table_from_json(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("table JSON parse error: ") + e.what());
  }
  if (!root.is_object() || !root.contains("order") || !root.contains("entries") ||
      !root["order"].is_number_integer())
    throw std::invalid_argument("table JSON must carry \"order\" and \"entries\"");
  CcmMomentTable table;
  table.order = root["order"].get<long>();
  if (table.order < 0) throw std::invalid_argument("table order must be nonnegative");
  table.value.assign(table.order + 1, std::vector<Rat>(table.order + 1, Rat(0)));
  for (const json& el : root["entries"]) {
    const long i = el.at("nmu").get<long>();
    const long j = el.at("nnu").get<long>();
    if (i < 0 || j < 0 || i + j > table.order)
      throw std::invalid_argument("table entry outside the stated order");
    table.value[i][j] = rat_from_string(el.at("value").get<std::string>());
  }
  return table;
}

}  // namespace freeconv
