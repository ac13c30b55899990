#pragma once

// JSON views of library values. Integers are numbers when they fit in 64 bits, strings otherwise.

#include "kummer/invariant.hpp"
#include "kummer/isometry.hpp"
#include "kummer/lattice.hpp"
#include "kummer/mukai.hpp"
#include "kummer/oracle.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <limits>
#include <vector>

namespace kummer::io {

using nlohmann::json;

inline json of(const Integer& x) {
  if (x >= std::numeric_limits<std::int64_t>::min() && x <= std::numeric_limits<std::int64_t>::max())
    return x.convert_to<std::int64_t>();
  return x.str();
}

inline json of(const std::vector<Integer>& xs) {
  json a = json::array();
  for (const auto& x : xs) a.push_back(of(x));
  return a;
}

inline json of(const LatticeVector& v) { return of(v.coords()); }

inline json of(const IntMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) rows.push_back(of(m.row(i)));
  return rows;
}

inline json of(const IntLattice& l) { return {{"label", l.label()}, {"rank", l.rank()}, {"gram", of(l.gram())}}; }

/// Row-major [numerator, denominator] pairs.
inline json of(const Isometry& g) {
  json rows = json::array();
  for (std::size_t i = 0; i < g.rank(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < g.rank(); ++j) {
      const Rational q = g.entry(i, j);
      row.push_back(json::array({of(numerator(q)), of(denominator(q))}));
    }
    rows.push_back(row);
  }
  return rows;
}

inline json of(const InvariantClass& c) { return {{"n", c.n}, {"d", c.d}, {"b", c.b}}; }

inline json of(const MukaiVector& v) { return {{"r", of(v.r)}, {"c", of(v.c)}, {"s", of(v.s)}}; }

inline json of(const PolType& t) { return t.entries(); }

inline json of(const Report& r) {
  json counts = json::object();
  for (const auto& [k, v] : r.counts) counts[k] = v;
  return {{"suite", r.suite},
          {"n", r.n},
          {"bound", r.bound},
          {"classes_checked", r.classes_checked},
          {"failures", r.failures},
          {"elapsed_ms", r.elapsed_ms},
          {"passed", r.passed()},
          {"counts", counts}};
}

}  // namespace kummer::io
