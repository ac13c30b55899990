#pragma once

// Mukai vectors on an abelian surface modeled on H⁰ ⊕ H² ⊕ H⁴ with H² = U⊕3,
// and polarization-type arithmetic.

#include "kummer/arith.hpp"
#include "kummer/invariant.hpp"
#include "kummer/lattice.hpp"

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace kummer {

/// Rank-8 model of H•(S): coordinates (r, c1..c6, s), with (h0, h4) = −1.
inline LatticePtr mukai_cohomology_lattice() {
  IntMatrix g = block_diagonal({IntMatrix{{0}}, hyperbolic_sum(3)->gram(), IntMatrix{{0}}});
  g(0, 7) = g(7, 0) = -1;
  return make_lattice(std::move(g), "H*(S)");
}

/// (r, c, s) with c ∈ U⊕3.
struct MukaiVector {
  Integer r;
  std::vector<Integer> c = std::vector<Integer>(6);
  Integer s;

  MukaiVector() = default;
  MukaiVector(Integer r_, std::vector<Integer> c_, Integer s_) : r(std::move(r_)), c(std::move(c_)), s(std::move(s_)) {
    if (c.size() != 6) throw std::invalid_argument("middle-degree part must have 6 coordinates");
  }

  LatticeVector to_lattice(const LatticePtr& h) const {
    std::vector<Integer> x;
    x.reserve(8);
    x.push_back(r);
    x.insert(x.end(), c.begin(), c.end());
    x.push_back(s);
    return {h, std::move(x)};
  }
  LatticeVector to_lattice() const { return to_lattice(mukai_cohomology_lattice()); }

  static MukaiVector from_lattice(const LatticeVector& x) {
    if (x.size() != 8) throw std::invalid_argument("expected a vector of H*(S)");
    return {x[0], std::vector<Integer>(x.coords().begin() + 1, x.coords().begin() + 7), x[7]};
  }

  bool middle_zero() const {
    return std::all_of(c.begin(), c.end(), [](const Integer& x) { return x == 0; });
  }

  friend bool operator==(const MukaiVector&, const MukaiVector&) = default;
};

/// (c,c') − (r s' + s r').
inline Integer mukai_pair(const MukaiVector& v, const MukaiVector& w) {
  Integer cc = 0;
  for (std::size_t k = 0; k < 6; k += 2) cc += v.c[k] * w.c[k + 1] + v.c[k + 1] * w.c[k];
  return cc - (v.r * w.s + v.s * w.r);
}

/// Default effectivity for r = 0: positive square and positive pairing with e1 + f1.
inline bool default_effective(const std::vector<Integer>& c) {
  MukaiVector m(0, c, 0);
  MukaiVector h(0, {1, 1, 0, 0, 0, 0}, 0);
  return mukai_pair(m, m) > 0 && mukai_pair(m, h) > 0;
}

/// r > 0; or r = 0, c effective, s ≠ 0; or r = c = 0, s < 0.
inline bool is_positive(const MukaiVector& v, std::optional<bool> c_effective = std::nullopt) {
  if (v.r > 0) return true;
  if (v.r < 0) return false;
  if (!v.middle_zero()) return v.s != 0 && c_effective.value_or(default_effective(v.c));
  return v.s < 0;
}

inline Integer moduli_dimension(const MukaiVector& v) {
  const Integer vv = mukai_pair(v, v);
  if (vv < 6) throw DomainError("(v,v) = " + vv.str() + " is below paper's threshold of 6");
  return vv - 2;
}

/// v⊥ inside H•(S).
inline Sublattice perp_lattice(const MukaiVector& v) {
  LatticePtr h = mukai_cohomology_lattice();
  LatticeVector x = v.to_lattice(h);
  if (x.is_zero() || !is_primitive(x)) throw DomainError("Mukai vector is not primitive");
  if (mukai_pair(v, v) < 6) throw DomainError("(v,v) must be at least 6");
  return orthogonal_complement(Sublattice(h, {x}));
}

/// gcd of the pairings of x with a basis of s (x is assumed to lie in s).
inline Integer divisibility_in(const LatticeVector& x, const Sublattice& s) {
  Integer g = 0;
  for (const auto& b : s.generators()) g = gcd(g, pair(x, b));
  return g;
}

// --- polarization types ---------------------------------------------------

/// (d1, ..., dm) with d_i | d_{i+1}.
class PolType {
 public:
  PolType() = default;
  explicit PolType(std::vector<std::int64_t> entries) : entries_(std::move(entries)) {
    for (std::size_t i = 0; i < entries_.size(); ++i) {
      if (entries_[i] < 1) throw DomainError("polarization type entries must be positive");
      if (i > 0 && entries_[i] % entries_[i - 1] != 0) throw DomainError("polarization type must satisfy d_i | d_{i+1}");
    }
  }
  const std::vector<std::int64_t>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  std::int64_t operator[](std::size_t i) const { return entries_[i]; }

  std::int64_t product() const {
    std::int64_t p = 1;
    for (auto x : entries_) p *= x;
    return p;
  }

  std::string str() const {
    std::string s = "(";
    for (std::size_t i = 0; i < entries_.size(); ++i) s += (i ? "," : "") + std::to_string(entries_[i]);
    return s + ")";
  }

  friend bool operator==(const PolType&, const PolType&) = default;

 private:
  std::vector<std::int64_t> entries_;
};

/// Type (1, d) of a primitive class of square 2d.
inline PolType poltype_from_primitive_square(std::int64_t two_d) {
  if (two_d <= 0 || two_d % 2 != 0) throw DomainError("square must be even and positive");
  return PolType({1, two_d / 2});
}

/// (d1, d1 dn/d_{n-1}, ..., d1 dn/d2, dn).
inline PolType dual_poltype(const PolType& t) {
  const std::size_t m = t.size();
  if (m <= 2) return t;
  std::vector<std::int64_t> out(m);
  out[0] = t[0];
  out[m - 1] = t[m - 1];
  for (std::size_t i = 1; i + 1 < m; ++i) out[i] = t[0] * t[m - 1] / t[m - 1 - i];
  return PolType(std::move(out));
}

/// t left-padded with ones to length dim_a.
inline PolType complementary_poltype(const PolType& t, std::size_t dim_a) {
  if (dim_a < t.size()) throw DomainError("dim A >= dim B violated");
  std::vector<std::int64_t> out(dim_a - t.size(), 1);
  out.insert(out.end(), t.entries().begin(), t.entries().end());
  return PolType(std::move(out));
}

inline PolType bm_system_poltype(std::int64_t d1, std::int64_t d2, int n) {
  if (n < 2) throw DomainError("polarization type needs n >= 2");
  if (d1 < 1 || d2 % d1 != 0) throw DomainError("d1 must divide d2");
  if (d1 * d2 != n + 1) throw DomainError("d1 * d2 must equal n+1");
  return complementary_poltype(PolType({d1, d2}), static_cast<std::size_t>(n));
}

/// (1, ..., 1, d, (n+1)/d) of length n.
inline PolType kummer_fibration_poltype(int n, int d) {
  if (n < 2) throw DomainError("polarization type needs n >= 2");
  require_admissible(n, d);
  std::vector<std::int64_t> out(static_cast<std::size_t>(n - 2), 1);
  out.push_back(d);
  out.push_back((n + 1) / d);
  return PolType(std::move(out));
}

// --- witness ---------------------------------------------------------------

struct BmWitness {
  int n = 0, d = 1, b = 0;
  Integer s;
  MukaiVector v, alpha;
  Integer v_square;
  Integer alpha_divisibility;  // inside v⊥
  bool integrality = false;    // (α − b v)/d integral for the given b
  InvariantClass invariant;
  PolType poltype;
};

/// v = (0, dβ, s) with β = e1 + ((n+1)/d²) f1 and s b ≡ 1 mod d; α = (0, 0, 1).
inline BmWitness bm_witness(int n, int d, int b) {
  if (n < 2) throw DomainError("witness needs n >= 2");
  require_admissible(n, d);
  if (std::gcd(d, b) != 1) throw DomainError("gcd(d, b) must be 1");
  BmWitness w;
  w.n = n;
  w.d = d;
  w.b = b;
  w.s = 1;
  if (d > 1) {
    const Bezout bz = ext_gcd(b, d);
    w.s = mod(bz.x, d);
  }
  const Integer k = Integer(n + 1) / (d * d);
  w.v = MukaiVector(0, {Integer(d), d * k, 0, 0, 0, 0}, w.s);
  w.alpha = MukaiVector(0, std::vector<Integer>(6), 1);

  LatticePtr h = mukai_cohomology_lattice();
  const LatticeVector v = w.v.to_lattice(h), a = w.alpha.to_lattice(h);
  w.v_square = mukai_pair(w.v, w.v);
  if (pair(v, a) != 0) throw std::logic_error("alpha is not orthogonal to v");
  const Sublattice perp = perp_lattice(w.v);
  w.alpha_divisibility = divisibility_in(a, perp);

  const LatticeVector diff = a - Integer(b) * v;
  w.integrality = std::all_of(diff.coords().begin(), diff.coords().end(),
                              [&](const Integer& x) { return x % d == 0; });
  w.invariant = invariant_of_marked_pair(a, v, w.alpha_divisibility);
  w.poltype = bm_system_poltype(d, (n + 1) / d, n);
  return w;
}

}  // namespace kummer
