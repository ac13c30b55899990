#pragma once

#include "kummer/arith.hpp"
#include "kummer/lattice.hpp"

#include <array>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace kummer {

/// Isometry of Λ⊗Q acting on column coordinate vectors, stored as numerator / denominator.
class Isometry {
 public:
  Isometry(LatticePtr home, RatMatrix m) : home_(std::move(home)) {
    Integer den = 1;
    for (const auto& x : m.data()) den = boost::multiprecision::lcm(den, denominator(x));
    numer_ = IntMatrix(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j) numer_(i, j) = numerator(m(i, j) * den);
    denom_ = den;
    validate();
  }
  Isometry(LatticePtr home, IntMatrix numer, Integer denom = 1)
      : home_(std::move(home)), numer_(std::move(numer)), denom_(std::move(denom)) {
    validate();
  }

  static Isometry identity(LatticePtr home) {
    const std::size_t n = home->rank();
    return {std::move(home), IntMatrix::identity(n)};
  }
  static Isometry minus_identity(LatticePtr home) {
    const std::size_t n = home->rank();
    return {std::move(home), Integer(-1) * IntMatrix::identity(n)};
  }

  const LatticePtr& home() const { return home_; }
  const IntMatrix& numerator_matrix() const { return numer_; }
  const Integer& denominator_value() const { return denom_; }
  bool integral() const { return denom_ == 1; }
  std::size_t rank() const { return numer_.rows(); }

  Rational entry(std::size_t i, std::size_t j) const { return Rational(numer_(i, j), denom_); }
  RatMatrix rational_matrix() const {
    RatMatrix r(rank(), rank());
    for (std::size_t i = 0; i < rank(); ++i)
      for (std::size_t j = 0; j < rank(); ++j) r(i, j) = entry(i, j);
    return r;
  }
  const IntMatrix& integer_matrix() const {
    if (!integral()) throw DomainError("isometry is not integral");
    return numer_;
  }

  LatticeVector apply(const LatticeVector& x) const {
    if (!same_lattice(*x.home(), *home_)) throw std::invalid_argument("lattice mismatch");
    std::vector<Integer> y = numer_ * x.coords();
    for (auto& c : y) {
      if (c % denom_ != 0) throw DomainError("image is not a lattice vector");
      c /= denom_;
    }
    return {home_, std::move(y)};
  }
  std::vector<Rational> apply(const std::vector<Rational>& x) const { return rational_matrix() * x; }

  /// (*this) ∘ inner.
  Isometry compose(const Isometry& inner) const {
    if (!same_lattice(*home_, *inner.home_)) throw std::invalid_argument("lattice mismatch");
    return Isometry(home_, numer_ * inner.numer_, denom_ * inner.denom_, Trusted{});
  }
  friend Isometry operator*(const Isometry& outer, const Isometry& inner) { return outer.compose(inner); }

  Isometry inverse() const { return Isometry(home_, kummer::inverse(rational_matrix()), Trusted{}); }

  Rational det() const {
    Integer n = determinant(numer_);
    Integer dn = boost::multiprecision::pow(denom_, static_cast<unsigned>(rank()));
    return Rational(n, dn);
  }

  friend bool operator==(const Isometry& a, const Isometry& b) {
    return same_lattice(*a.home_, *b.home_) && a.denom_ == b.denom_ && a.numer_ == b.numer_;
  }

  /// Exact check of matrix^t gram matrix = gram.
  bool preserves_form() const {
    const IntMatrix& g = home_->gram();
    return numer_.transpose() * g * numer_ == (denom_ * denom_) * g;
  }

 private:
  struct Trusted {};
  Isometry(LatticePtr home, IntMatrix numer, Integer denom, Trusted)
      : home_(std::move(home)), numer_(std::move(numer)), denom_(std::move(denom)) {
    normalize();
  }
  Isometry(LatticePtr home, const RatMatrix& m, Trusted) : home_(std::move(home)) {
    Integer den = 1;
    for (const auto& x : m.data()) den = boost::multiprecision::lcm(den, denominator(x));
    numer_ = IntMatrix(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j) numer_(i, j) = numerator(m(i, j) * den);
    denom_ = den;
    normalize();
  }

  void normalize() {
    if (denom_ == 0) throw std::invalid_argument("zero denominator");
    if (denom_ < 0) {
      denom_ = -denom_;
      numer_ = Integer(-1) * numer_;
    }
    Integer g = denom_;
    for (const auto& x : numer_.data()) {
      if (g == 1) break;
      g = gcd(g, x);
    }
    if (g != 1) {
      for (std::size_t i = 0; i < rank(); ++i)
        for (std::size_t j = 0; j < rank(); ++j) numer_(i, j) /= g;
      denom_ /= g;
    }
  }

  void validate() {
    if (!home_) throw std::invalid_argument("isometry without a home lattice");
    if (numer_.rows() != home_->rank() || numer_.cols() != home_->rank())
      throw std::invalid_argument("isometry matrix has the wrong size");
    normalize();
    if (!preserves_form()) throw DomainError("matrix does not preserve the Gram form");
  }

  LatticePtr home_;
  IntMatrix numer_;
  Integer denom_ = 1;
};

// --- constructors ---------------------------------------------------------

/// R_u(x) = x - 2 (u,x)/(u,u) u.
inline Isometry reflection(const LatticeVector& u) {
  const Integer uu = norm(u);
  if (uu == 0) throw DomainError("isotropic reflection vector");
  const std::size_t n = u.size();
  const std::vector<Integer> gu = pairing_row(u);
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = (i == j ? uu : Integer(0)) - 2 * u[i] * gu[j];
  return {u.home(), std::move(m), uu};
}

/// The orientation preserving reflection: R_u if (u,u) < 0, -R_u if (u,u) > 0.
inline Isometry rho(const LatticeVector& u) {
  Isometry r = reflection(u);
  if (norm(u) < 0) return r;
  return Isometry::minus_identity(u.home()) * r;
}

/// Eichler transvection x ↦ x + (x,e)a − (x,a)e − ½(a,a)(x,e)e.
inline Isometry transvection(const LatticeVector& e, const LatticeVector& a) {
  LatticeVector::check_same(e, a);
  if (norm(e) != 0) throw DomainError("transvection requires an isotropic vector e");
  if (pair(e, a) != 0) throw DomainError("transvection requires (e,a) = 0");
  const std::size_t n = e.size();
  const std::vector<Integer> ge = pairing_row(e), ga = pairing_row(a);
  const Integer aa = norm(a);
  // Scaled by 2 so the half term stays integral.
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      m(i, j) = (i == j ? Integer(2) : Integer(0)) + 2 * a[i] * ge[j] - 2 * e[i] * ga[j] - aa * e[i] * ge[j];
  Isometry t(e.home(), std::move(m), 2);
  if (!t.integral()) throw DomainError("transvection is not integral on this lattice");
  return t;
}

// --- discriminant action, orientation, group membership -------------------

enum class DiscriminantAction { Plus, Minus, Other };

inline const char* to_string(DiscriminantAction a) {
  switch (a) {
    case DiscriminantAction::Plus: return "+1";
    case DiscriminantAction::Minus: return "-1";
    default: return "other";
  }
}

namespace detail {
inline bool integral_vector(const std::vector<Rational>& v) {
  for (const auto& x : v)
    if (!is_integral(x)) return false;
  return true;
}
}  // namespace detail

inline DiscriminantAction discriminant_action(const Isometry& g) {
  if (!g.integral()) throw DomainError("discriminant action requires an integral isometry");
  const auto& disc = g.home()->discriminant();
  if (!disc) throw DomainError("degenerate");
  bool plus = true, minus = true;
  for (const auto& h : disc->generator_lifts) {
    std::vector<Rational> gh = g.apply(h);
    std::vector<Rational> diff(h.size()), sum(h.size());
    for (std::size_t i = 0; i < h.size(); ++i) {
      diff[i] = gh[i] - h[i];
      sum[i] = gh[i] + h[i];
    }
    plus = plus && detail::integral_vector(diff);
    minus = minus && detail::integral_vector(sum);
  }
  if (plus) return DiscriminantAction::Plus;
  if (minus) return DiscriminantAction::Minus;
  return DiscriminantAction::Other;
}

/// ±1 value of the orientation (spinor norm) character.
struct OrientationSign {
  int value = 1;
  bool preserving() const { return value == 1; }
  friend bool operator==(const OrientationSign&, const OrientationSign&) = default;
};

/// Three lattice vectors spanning a positive definite 3-space.
class PositiveTriple {
 public:
  PositiveTriple(LatticeVector w1, LatticeVector w2, LatticeVector w3) : w_{std::move(w1), std::move(w2), std::move(w3)} {
    LatticeVector::check_same(w_[0], w_[1]);
    LatticeVector::check_same(w_[0], w_[2]);
    IntMatrix g = gram();
    Integer m1 = g(0, 0);
    Integer m2 = g(0, 0) * g(1, 1) - g(0, 1) * g(1, 0);
    if (m1 <= 0 || m2 <= 0 || determinant(g) <= 0) throw DomainError("triple is not positive definite");
  }
  const std::array<LatticeVector, 3>& vectors() const { return w_; }
  const LatticePtr& home() const { return w_[0].home(); }
  IntMatrix gram() const {
    IntMatrix g(3, 3);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) g(i, j) = pair(w_[i], w_[j]);
    return g;
  }

 private:
  std::array<LatticeVector, 3> w_;
};

/// (e1+f1, e2+f2, e3+f3) when the first six basis vectors are three hyperbolic planes;
/// otherwise three positive directions from a congruence diagonalization.
inline PositiveTriple canonical_positive_triple(const LatticePtr& home) {
  const IntMatrix& g = home->gram();
  bool planes = home->rank() >= 6;
  for (std::size_t i = 0; planes && i < 6; ++i)
    for (std::size_t j = 0; j < home->rank(); ++j) {
      const bool partner = (j == (i ^ 1));
      if (g(i, j) != (partner ? 1 : 0)) {
        planes = false;
        break;
      }
    }
  if (planes) {
    auto w = [&](std::size_t k) { return LatticeVector::basis(home, 2 * k) + LatticeVector::basis(home, 2 * k + 1); };
    return {w(0), w(1), w(2)};
  }
  Diagonalization diag = diagonalize(g);
  std::vector<LatticeVector> pos;
  for (std::size_t k = 0; k < diag.diagonal.size(); ++k) {
    if (diag.diagonal[k] <= 0) continue;
    std::vector<Rational> col = diag.basis.col(k);
    Integer den = 1;
    for (const auto& x : col) den = boost::multiprecision::lcm(den, denominator(x));
    std::vector<Integer> c;
    for (const auto& x : col) c.push_back(numerator(x * den));
    pos.emplace_back(home, std::move(c));
  }
  if (pos.size() != 3) throw DomainError("orientation requires positive index 3");
  return {pos[0], pos[1], pos[2]};
}

/// Sign of det of (projection to span W) ∘ g restricted to span W.
inline OrientationSign orientation_sign(const Isometry& g, const PositiveTriple& w) {
  if (!same_lattice(*g.home(), *w.home())) throw std::invalid_argument("lattice mismatch");
  if (signature(*g.home()).positive != 3) throw DomainError("orientation requires positive index 3");
  // Projection coefficients are G_W^{-1} M with det G_W > 0, so only det M matters.
  RatMatrix m(3, 3);
  const auto& vs = w.vectors();
  for (std::size_t j = 0; j < 3; ++j) {
    std::vector<Rational> gw = g.apply(to_rational(vs[j].coords()));
    for (std::size_t i = 0; i < 3; ++i) {
      std::vector<Integer> row = pairing_row(vs[i]);
      Rational s = 0;
      for (std::size_t k = 0; k < row.size(); ++k) s += Rational(row[k]) * gw[k];
      m(i, j) = s;
    }
  }
  const int s = sign(determinant(m));
  if (s == 0) throw std::logic_error("singular projection: matrix is not an isometry");
  return {s};
}

inline OrientationSign orientation_sign(const Isometry& g) {
  return orientation_sign(g, canonical_positive_triple(g.home()));
}

/// Orientation preserving and ±1 on the discriminant.
inline bool w_contains(const Isometry& g) {
  if (!g.integral()) return false;
  if (!orientation_sign(g).preserving()) return false;
  return discriminant_action(g) != DiscriminantAction::Other;
}

inline int chi(const Isometry& g) {
  if (!w_contains(g)) throw DomainError("not in W");
  return discriminant_action(g) == DiscriminantAction::Minus ? -1 : 1;
}

/// Membership in the monodromy group of a Kummer-type lattice: g ∈ W and χ(g)·det(g) = 1.
inline bool mon2_contains(const Isometry& g) {
  if (!kummer_index(*g.home())) throw DomainError("mon2_contains is defined only on Kummer lattices");
  if (!w_contains(g)) return false;
  return chi(g) * g.det() == 1;
}

}  // namespace kummer
