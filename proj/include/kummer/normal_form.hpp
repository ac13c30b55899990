#pragma once

#include "kummer/arith.hpp"

#include <algorithm>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

namespace kummer {

/// Smith normal form with unimodular transforms: left * input * right = diag.
struct SmithForm {
  IntMatrix left;   // rows x rows, unimodular
  IntMatrix diag;   // rows x cols, d_1 | d_2 | ... , nonnegative
  IntMatrix right;  // cols x cols, unimodular
  std::size_t rank = 0;

  std::vector<Integer> invariant_factors() const {
    std::vector<Integer> out;
    for (std::size_t i = 0; i < rank; ++i) out.push_back(diag(i, i));
    return out;
  }
};

inline SmithForm smith_form(const IntMatrix& a) {
  const std::size_t m = a.rows(), n = a.cols();
  IntMatrix d = a;
  IntMatrix u = IntMatrix::identity(m);
  IntMatrix v = IntMatrix::identity(n);
  std::size_t t = 0;
  for (; t < std::min(m, n); ++t) {
    bool exhausted = false;
    for (;;) {
      std::optional<std::pair<std::size_t, std::size_t>> piv;
      Integer best;
      for (std::size_t i = t; i < m; ++i)
        for (std::size_t j = t; j < n; ++j)
          if (d(i, j) != 0 && (!piv || abs(d(i, j)) < best)) {
            best = abs(d(i, j));
            piv = {i, j};
          }
      if (!piv) {
        exhausted = true;
        break;
      }
      d.swap_rows(t, piv->first);
      u.swap_rows(t, piv->first);
      d.swap_cols(t, piv->second);
      v.swap_cols(t, piv->second);

      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (d(i, t) == 0) continue;
        Integer q = d(i, t) / d(t, t);
        d.add_row(i, t, -q);
        u.add_row(i, t, -q);
        if (d(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (d(t, j) == 0) continue;
        Integer q = d(t, j) / d(t, t);
        d.add_col(j, t, -q);
        v.add_col(j, t, -q);
        if (d(t, j) != 0) clean = false;
      }
      if (!clean) continue;

      std::optional<std::size_t> bad_row;
      for (std::size_t i = t + 1; i < m && !bad_row; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (d(i, j) % d(t, t) != 0) {
            bad_row = i;
            break;
          }
      if (bad_row) {
        d.add_row(t, *bad_row, 1);
        u.add_row(t, *bad_row, 1);
        continue;
      }
      break;
    }
    if (exhausted) break;
    if (d(t, t) < 0) {
      d.negate_row(t);
      u.negate_row(t);
    }
  }
  return {std::move(u), std::move(d), std::move(v), t};
}

/// Row-style Hermite normal form; zero rows are dropped.
inline IntMatrix hermite_rows(const IntMatrix& a) {
  IntMatrix h = a;
  const std::size_t m = h.rows(), n = h.cols();
  std::size_t r = 0;
  for (std::size_t c = 0; c < n && r < m; ++c) {
    for (;;) {
      std::optional<std::size_t> p;
      for (std::size_t i = r; i < m; ++i)
        if (h(i, c) != 0 && (!p || abs(h(i, c)) < abs(h(*p, c)))) p = i;
      if (!p) break;
      h.swap_rows(r, *p);
      bool done = true;
      for (std::size_t i = r + 1; i < m; ++i) {
        if (h(i, c) == 0) continue;
        h.add_row(i, r, -(h(i, c) / h(r, c)));
        if (h(i, c) != 0) done = false;
      }
      if (done) break;
    }
    if (h(r, c) == 0) continue;
    if (h(r, c) < 0) h.negate_row(r);
    for (std::size_t i = 0; i < r; ++i) h.add_row(i, r, -floor_div(h(i, c), h(r, c)));
    ++r;
  }
  IntMatrix out(r, n);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < n; ++j) out(i, j) = h(i, j);
  return out;
}

/// Basis (as rows) of the integer right kernel { x : a x = 0 }; saturated.
inline IntMatrix integer_kernel(const IntMatrix& a) {
  SmithForm s = smith_form(a);
  const std::size_t n = a.cols();
  IntMatrix k(n - s.rank, n);
  for (std::size_t c = s.rank; c < n; ++c)
    for (std::size_t i = 0; i < n; ++i) k(c - s.rank, i) = s.right(i, c);
  return hermite_rows(k);
}

/// Basis (as rows) of (rational row span of a) intersected with Z^n.
inline IntMatrix saturation_rows(const IntMatrix& a) {
  // a = L^-1 D R^-1, so the row span over Q is spanned by the first rank rows of R^-1.
  SmithForm s = smith_form(a);
  RatMatrix rinv = inverse(to_rational(s.right));
  IntMatrix out(s.rank, a.cols());
  for (std::size_t i = 0; i < s.rank; ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = numerator(rinv(i, j));
  return hermite_rows(out);
}

}  // namespace kummer
