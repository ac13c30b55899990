#pragma once

// Integer lattices with a symmetric Gram matrix on a fixed ordered basis.
//
// Basis conventions for the named lattices (all cross-module coordinates use these):
//   hyperbolic_plane()  e, f                          Gram [[0,1],[1,0]]
//   kummer_lattice(n)   e1,f1,e2,f2,e3,f3,delta       U+U+U+<-(2n+2)>
//   mukai_lattice()     e1,f1,e2,f2,e3,f3,e4,f4       U+U+U+U
//   lnd_lattice(n,d)    x, y                          ((2n+2)/d^2) [[1,0],[0,0]]

#include "kummer/arith.hpp"
#include "kummer/normal_form.hpp"

#include <cstddef>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace kummer {

/// Finite abelian group Λ∨/Λ as a product of cyclic groups.
struct DiscriminantGroup {
  std::vector<Integer> cyclic_orders;                  // invariant factors > 1
  std::vector<std::vector<Rational>> generator_lifts;  // in Λ⊗Q, basis coordinates

  Integer order() const {
    Integer o = 1;
    for (const auto& c : cyclic_orders) o *= c;
    return o;
  }
  bool trivial() const { return cyclic_orders.empty(); }
};

struct Signature {
  std::size_t positive = 0, negative = 0, kernel = 0;
  bool degenerate() const { return kernel != 0; }
  friend bool operator==(const Signature&, const Signature&) = default;
};

/// Exact congruence diagonalization over Q; also returns the diagonalizing basis (columns).
struct Diagonalization {
  RatMatrix basis;  // columns b_i with b_i^t G b_j = 0 for i != j
  std::vector<Rational> diagonal;
};

inline Diagonalization diagonalize(const IntMatrix& gram) {
  const std::size_t n = gram.rows();
  RatMatrix a = to_rational(gram);
  RatMatrix p = RatMatrix::identity(n);  // a = p^t G p throughout
  auto congruence_add = [&](std::size_t dst, std::size_t src, const Rational& k) {
    a.add_row(dst, src, k);
    a.add_col(dst, src, k);
    p.add_col(dst, src, k);
  };
  for (std::size_t k = 0; k < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t j = k + 1;
      while (j < n && a(j, j) == 0) ++j;
      if (j < n) {
        a.swap_rows(k, j);
        a.swap_cols(k, j);
        p.swap_cols(k, j);
      } else {
        j = k + 1;
        while (j < n && a(k, j) == 0) ++j;
        if (j == n) continue;  // row k is already zero
        // a_kk becomes 2 a_kj != 0
        congruence_add(k, j, 1);
      }
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      if (a(i, k) == 0) continue;
      congruence_add(i, k, -a(i, k) / a(k, k));
    }
  }
  Diagonalization d{p, {}};
  for (std::size_t i = 0; i < n; ++i) d.diagonal.push_back(a(i, i));
  return d;
}

namespace detail {

inline DiscriminantGroup compute_discriminant(const IntMatrix& gram) {
  SmithForm s = smith_form(gram);
  const std::size_t n = gram.rows();
  RatMatrix gram_inv = inverse(to_rational(gram));
  RatMatrix left_inv = inverse(to_rational(s.left));
  DiscriminantGroup g;
  for (std::size_t k = 0; k < n; ++k) {
    if (s.diag(k, k) == 1) continue;
    g.cyclic_orders.push_back(s.diag(k, k));
    g.generator_lifts.push_back(gram_inv * left_inv.col(k));
  }
  return g;
}

}  // namespace detail

class IntLattice {
 public:
  IntLattice(IntMatrix gram, std::string label) : gram_(std::move(gram)), label_(std::move(label)) {
    if (!gram_.square() || gram_.rows() == 0) throw std::invalid_argument("Gram matrix must be square and nonempty");
    if (!gram_.symmetric()) throw std::invalid_argument("Gram matrix must be symmetric");
    det_ = determinant(gram_);
    if (det_ != 0) disc_ = detail::compute_discriminant(gram_);
    for (const auto& x : diagonalize(gram_).diagonal) {
      if (x > 0) ++signature_.positive;
      else if (x < 0) ++signature_.negative;
      else ++signature_.kernel;
    }
  }

  std::size_t rank() const { return gram_.rows(); }
  const IntMatrix& gram() const { return gram_; }
  const std::string& label() const { return label_; }
  const Integer& det() const { return det_; }
  bool degenerate() const { return det_ == 0; }
  bool even() const {
    for (std::size_t i = 0; i < rank(); ++i)
      if (gram_(i, i) % 2 != 0) return false;
    return true;
  }

  /// Cached at construction; empty for degenerate lattices.
  const std::optional<DiscriminantGroup>& discriminant() const { return disc_; }
  const Signature& signature() const { return signature_; }

 private:
  IntMatrix gram_;
  std::string label_;
  Integer det_;
  std::optional<DiscriminantGroup> disc_;
  Signature signature_;
};

using LatticePtr = std::shared_ptr<const IntLattice>;

inline LatticePtr make_lattice(IntMatrix gram, std::string label) {
  return std::make_shared<const IntLattice>(std::move(gram), std::move(label));
}

inline bool same_lattice(const IntLattice& a, const IntLattice& b) {
  return &a == &b || a.gram() == b.gram();
}

class LatticeVector {
 public:
  LatticeVector(LatticePtr home, std::vector<Integer> coords)
      : home_(std::move(home)), coords_(std::move(coords)) {
    if (!home_) throw std::invalid_argument("vector without a home lattice");
    if (coords_.size() != home_->rank()) throw std::invalid_argument("coordinate count does not match lattice rank");
  }

  static LatticeVector zero(LatticePtr home) {
    std::vector<Integer> c(home->rank());
    return {std::move(home), std::move(c)};
  }
  static LatticeVector basis(LatticePtr home, std::size_t i) {
    std::vector<Integer> c(home->rank());
    c.at(i) = 1;
    return {std::move(home), std::move(c)};
  }

  const LatticePtr& home() const { return home_; }
  const std::vector<Integer>& coords() const { return coords_; }
  std::size_t size() const { return coords_.size(); }
  const Integer& operator[](std::size_t i) const { return coords_[i]; }
  bool is_zero() const {
    for (const auto& c : coords_)
      if (c != 0) return false;
    return true;
  }

  friend LatticeVector operator+(const LatticeVector& a, const LatticeVector& b) {
    check_same(a, b);
    std::vector<Integer> c = a.coords_;
    for (std::size_t i = 0; i < c.size(); ++i) c[i] += b.coords_[i];
    return {a.home_, std::move(c)};
  }
  friend LatticeVector operator-(const LatticeVector& a, const LatticeVector& b) {
    check_same(a, b);
    std::vector<Integer> c = a.coords_;
    for (std::size_t i = 0; i < c.size(); ++i) c[i] -= b.coords_[i];
    return {a.home_, std::move(c)};
  }
  friend LatticeVector operator-(const LatticeVector& a) {
    std::vector<Integer> c = a.coords_;
    for (auto& x : c) x = -x;
    return {a.home_, std::move(c)};
  }
  friend LatticeVector operator*(const Integer& k, const LatticeVector& a) {
    std::vector<Integer> c = a.coords_;
    for (auto& x : c) x *= k;
    return {a.home_, std::move(c)};
  }
  friend bool operator==(const LatticeVector& a, const LatticeVector& b) {
    return same_lattice(*a.home_, *b.home_) && a.coords_ == b.coords_;
  }

  /// Exact division of every coordinate; throws if not divisible.
  LatticeVector divided_by(const Integer& k) const {
    std::vector<Integer> c = coords_;
    for (auto& x : c) {
      if (x % k != 0) throw DomainError("vector is not divisible by " + k.str());
      x /= k;
    }
    return {home_, std::move(c)};
  }

  static void check_same(const LatticeVector& a, const LatticeVector& b) {
    if (!same_lattice(*a.home_, *b.home_)) throw std::invalid_argument("lattice mismatch");
  }

 private:
  LatticePtr home_;
  std::vector<Integer> coords_;
};

inline Integer pair(const LatticeVector& x, const LatticeVector& y) {
  LatticeVector::check_same(x, y);
  const IntMatrix& g = x.home()->gram();
  Integer s = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < y.size(); ++j)
      if (y[j] != 0 && g(i, j) != 0) s += x[i] * g(i, j) * y[j];
  }
  return s;
}

inline Integer norm(const LatticeVector& x) { return pair(x, x); }

/// Pairings of x with every basis vector, i.e. gram * x.
inline std::vector<Integer> pairing_row(const LatticeVector& x) {
  return x.home()->gram() * x.coords();
}

/// Div(x): gcd of the pairings of x with the lattice. Div(0) is 0 by convention.
inline Integer divisibility(const LatticeVector& x) { return gcd(pairing_row(x)); }

inline bool is_primitive(const LatticeVector& x) {
  if (x.is_zero()) throw DomainError("zero vector");
  return gcd(x.coords()) == 1;
}

/// Z-span of a list of vectors in a common home lattice.
class Sublattice {
 public:
  Sublattice(LatticePtr home, std::vector<LatticeVector> generators)
      : home_(std::move(home)), generators_(std::move(generators)) {
    for (const auto& g : generators_)
      if (!same_lattice(*g.home(), *home_)) throw std::invalid_argument("lattice mismatch");
  }

  static Sublattice from_rows(LatticePtr home, const IntMatrix& rows) {
    std::vector<LatticeVector> gens;
    for (std::size_t i = 0; i < rows.rows(); ++i) gens.emplace_back(home, rows.row(i));
    return {std::move(home), std::move(gens)};
  }

  const LatticePtr& home() const { return home_; }
  const std::vector<LatticeVector>& generators() const { return generators_; }

  IntMatrix matrix() const {
    IntMatrix m(generators_.size(), home_->rank());
    for (std::size_t i = 0; i < generators_.size(); ++i)
      for (std::size_t j = 0; j < home_->rank(); ++j) m(i, j) = generators_[i][j];
    return m;
  }

  /// Canonical basis rows (Hermite normal form).
  IntMatrix hermite_basis() const { return hermite_rows(matrix()); }

  std::size_t rank() const { return hermite_basis().rows(); }

  IntMatrix gram() const {
    IntMatrix m = matrix();
    return m * home_->gram() * m.transpose();
  }

  bool same_span(const Sublattice& other) const {
    return same_lattice(*home_, *other.home_) && hermite_basis() == other.hermite_basis();
  }

  bool contains(const LatticeVector& x) const {
    std::vector<LatticeVector> more = generators_;
    more.push_back(x);
    return hermite_basis() == Sublattice(home_, std::move(more)).hermite_basis();
  }

  /// The span as a lattice of its own, on its Hermite basis.
  LatticePtr as_lattice(std::string label) const {
    IntMatrix b = hermite_basis();
    return make_lattice(b * home_->gram() * b.transpose(), std::move(label));
  }

 private:
  LatticePtr home_;
  std::vector<LatticeVector> generators_;
};

inline Sublattice saturate(const Sublattice& s) {
  if (s.generators().empty()) return s;
  return Sublattice::from_rows(s.home(), saturation_rows(s.matrix()));
}

/// [sat(s) : s] for linearly independent generators.
inline Integer saturation_index(const Sublattice& s) {
  Integer idx = 1;
  for (const auto& f : smith_form(s.matrix()).invariant_factors()) idx *= f;
  return idx;
}

inline DiscriminantGroup discriminant_group(const IntLattice& l) {
  if (!l.discriminant()) throw DomainError("degenerate");
  return *l.discriminant();
}

/// Saturated sublattice of vectors orthogonal to every generator.
inline Sublattice orthogonal_complement(const Sublattice& s) {
  const auto& home = s.home();
  if (home->degenerate()) throw DomainError("degenerate");
  if (s.generators().empty()) return Sublattice::from_rows(home, IntMatrix::identity(home->rank()));
  return Sublattice::from_rows(home, integer_kernel(s.matrix() * home->gram()));
}

/// Counts of positive, negative and zero diagonal entries of a congruence diagonalization.
inline Signature signature(const IntLattice& l) { return l.signature(); }

// --- named lattices -------------------------------------------------------

inline IntMatrix block_diagonal(const std::vector<IntMatrix>& blocks) {
  std::size_t n = 0;
  for (const auto& b : blocks) n += b.rows();
  IntMatrix g(n, n);
  std::size_t off = 0;
  for (const auto& b : blocks) {
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < b.cols(); ++j) g(off + i, off + j) = b(i, j);
    off += b.rows();
  }
  return g;
}

inline IntMatrix hyperbolic_gram() { return IntMatrix{{0, 1}, {1, 0}}; }

inline LatticePtr hyperbolic_plane() { return make_lattice(hyperbolic_gram(), "U"); }

inline LatticePtr hyperbolic_sum(std::size_t copies) {
  std::vector<IntMatrix> blocks(copies, hyperbolic_gram());
  return make_lattice(block_diagonal(blocks), copies == 1 ? "U" : "U^" + std::to_string(copies));
}

/// Rank-one lattice <k>.
inline LatticePtr rank_one(const Integer& k) {
  return make_lattice(IntMatrix{{k}}, "<" + k.str() + ">");
}

inline LatticePtr kummer_lattice(int n) {
  if (n < 1) throw DomainError("kummer_lattice requires n >= 1");
  std::vector<IntMatrix> blocks(3, hyperbolic_gram());
  blocks.push_back(IntMatrix{{Integer(-(2 * n + 2))}});
  return make_lattice(block_diagonal(blocks), "Lambda_" + std::to_string(n));
}

inline LatticePtr mukai_lattice() {
  std::vector<IntMatrix> blocks(4, hyperbolic_gram());
  return make_lattice(block_diagonal(blocks), "Mukai");
}

inline LatticePtr lnd_lattice(int n, int d) {
  if (d < 1) throw DomainError("lnd_lattice requires d >= 1");
  const Integer top = 2 * n + 2, dd = Integer(d) * d;
  if (top % dd != 0) throw DomainError("d^2 does not divide 2n+2");
  return make_lattice(IntMatrix{{top / dd, 0}, {0, 0}},
                      "L_" + std::to_string(n) + "," + std::to_string(d));
}

/// n if l is the Kummer lattice Λ_n in the documented basis.
inline std::optional<int> kummer_index(const IntLattice& l) {
  if (l.rank() != 7) return std::nullopt;
  const Integer last = -l.gram()(6, 6);
  if (last < 4 || last % 2 != 0) return std::nullopt;
  const IntMatrix& g = l.gram();
  for (std::size_t i = 0; i < 7; ++i)
    for (std::size_t j = 0; j < 7; ++j) {
      if (i == 6 && j == 6) continue;
      const bool plane = i < 6 && j < 6 && i / 2 == j / 2 && i != j;
      if (g(i, j) != (plane ? 1 : 0)) return std::nullopt;
    }
  return static_cast<int>(to_int64(last / 2 - 1));
}

/// Index of delta in Λ_n.
inline constexpr std::size_t kDelta = 6;

}  // namespace kummer
