#pragma once

// The monodromy invariant of a primitive isotropic class α ∈ Λ_n: the isometry class of
// H = sat<ι(α), v> ⊂ Λ̃ marked by v, normalized to (n, d, ±b mod d).

#include "kummer/arith.hpp"
#include "kummer/lattice.hpp"
#include "kummer/normal_form.hpp"

#include <compare>
#include <numeric>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace kummer {

/// Primitive isometric embedding source ↪ target together with a generator v of the complement.
class PrimEmbedding {
 public:
  /// `columns` is target.rank × source.rank; column j is the image of the j-th source basis vector.
  PrimEmbedding(LatticePtr source, LatticePtr target, IntMatrix columns, std::vector<Integer> v)
      : source_(std::move(source)), target_(std::move(target)), matrix_(std::move(columns)),
        v_(target_, std::move(v)) {
    if (matrix_.rows() != target_->rank() || matrix_.cols() != source_->rank())
      throw std::invalid_argument("embedding matrix has the wrong shape");
    if (matrix_.transpose() * target_->gram() * matrix_ != source_->gram())
      throw DomainError("embedding is not isometric");
  }

  const LatticePtr& source() const { return source_; }
  const LatticePtr& target() const { return target_; }
  const IntMatrix& matrix() const { return matrix_; }
  const LatticeVector& v() const { return v_; }

  LatticeVector apply(const LatticeVector& x) const {
    if (!same_lattice(*x.home(), *source_)) throw std::invalid_argument("lattice mismatch");
    return {target_, matrix_ * x.coords()};
  }

  Sublattice image() const { return Sublattice::from_rows(target_, matrix_.transpose()); }

  bool image_saturated() const { return saturation_index(image()) == 1; }

  bool v_spans_complement() const {
    Sublattice perp = orthogonal_complement(image());
    return perp.same_span(Sublattice(target_, {v_}));
  }

 private:
  LatticePtr source_, target_;
  IntMatrix matrix_;
  LatticeVector v_;
};

/// Normalized value of the invariant: b is the representative of {±b mod d} in [0, d/2].
struct InvariantClass {
  int n = 0;
  int d = 1;
  int b = 0;

  friend bool operator==(const InvariantClass&, const InvariantClass&) = default;
  friend auto operator<=>(const InvariantClass&, const InvariantClass&) = default;

  std::string str() const {
    return "(" + std::to_string(n) + "," + std::to_string(d) + "," + std::to_string(b) + ")";
  }
};

struct Decomposition {
  Integer d;
  LatticeVector xi;  // lies in U⊕3, δ-coordinate zero
  Integer b;
};

/// min(b mod d, d - b mod d); zero for d = 1.
inline int normalize_residue(const Integer& b, const Integer& d) {
  if (d < 1) throw DomainError("residue modulus must be positive");
  const Integer r = mod(b, d);
  return static_cast<int>(to_int64(r <= d - r ? r : Integer(d - r)));
}

inline std::vector<int> admissible_divisibilities(int n) {
  if (n < 1) throw DomainError("n must be at least 1");
  std::vector<int> out;
  for (int d = 1; d * d <= n + 1; ++d)
    if ((n + 1) % (d * d) == 0) out.push_back(d);
  return out;
}

inline bool admissible(int n, int d) { return d >= 1 && n >= 1 && (n + 1) % (d * d) == 0; }

inline void require_admissible(int n, int d) {
  if (n < 1) throw DomainError("n must be at least 1");
  if (!admissible(n, d)) throw DomainError("d^2 does not divide n+1");
}

inline std::vector<InvariantClass> sigma_classes(int n, int d) {
  require_admissible(n, d);
  if (d == 1) return {{n, 1, 0}};
  std::vector<InvariantClass> out;
  for (int r = 1; 2 * r <= d; ++r)
    if (std::gcd(r, d) == 1) out.push_back({n, d, r});
  return out;
}

/// d(e1 + ((n+1)b²/d²) f1) + bδ, a class with invariant (n, d, b).
inline LatticeVector sigma_witness(const LatticePtr& lambda, int d, int b) {
  const auto n = kummer_index(*lambda);
  if (!n) throw DomainError("witness requires a Kummer lattice");
  require_admissible(*n, d);
  std::vector<Integer> c(7);
  c[0] = d;
  c[1] = Integer(*n + 1) * b * b / d;
  c[kDelta] = b;
  return {lambda, std::move(c)};
}

/// ι₀: e_i, f_i ↦ e_i, f_i and δ ↦ e4 − (n+1) f4, with v = e4 + (n+1) f4.
inline PrimEmbedding canonical_embedding(int n) {
  LatticePtr source = kummer_lattice(n);
  IntMatrix m(8, 7);
  for (std::size_t i = 0; i < 6; ++i) m(i, i) = 1;
  m(6, kDelta) = 1;
  m(7, kDelta) = -(n + 1);
  std::vector<Integer> v(8);
  v[6] = 1;
  v[7] = n + 1;
  return {std::move(source), mukai_lattice(), std::move(m), std::move(v)};
}

inline void require_primitive_isotropic(const LatticeVector& alpha) {
  if (alpha.is_zero() || !is_primitive(alpha)) throw DomainError("alpha is not primitive");
  if (const Integer q = norm(alpha); q != 0)
    throw DomainError("not isotropic, (alpha,alpha) = " + q.str());
}

inline int kummer_n_of(const LatticeVector& alpha) {
  const auto n = kummer_index(*alpha.home());
  if (!n) throw DomainError("expected a vector of a Kummer lattice");
  return *n;
}

/// α = dξ + bδ with ξ ∈ U⊕3 primitive.
inline Decomposition decompose(const LatticeVector& alpha) {
  const int n = kummer_n_of(alpha);
  require_primitive_isotropic(alpha);
  std::vector<Integer> u(alpha.coords().begin(), alpha.coords().begin() + kDelta);
  const Integer d = gcd(u);
  if (d == 0) throw std::logic_error("isotropic primitive vector with no U-part");
  if (d != divisibility(alpha)) throw std::logic_error("U-content differs from divisibility");
  if ((n + 1) % (d * d) != 0) throw std::logic_error("d^2 does not divide n+1 for an isotropic class");
  std::vector<Integer> xi(7);
  for (std::size_t i = 0; i < kDelta; ++i) xi[i] = u[i] / d;
  return {d, LatticeVector(alpha.home(), std::move(xi)), alpha[kDelta]};
}

/// Least b in [0, d) with (image − b v)/d integral and gcd(d, b) = 1.
inline Integer find_b(const LatticeVector& image, const LatticeVector& v, const Integer& d) {
  LatticeVector::check_same(image, v);
  for (Integer b = 0; b < d; ++b) {
    if (gcd(d, b) != 1) continue;
    bool ok = true;
    for (std::size_t i = 0; i < image.size() && ok; ++i) ok = (image[i] - b * v[i]) % d == 0;
    if (ok) return b;
  }
  throw std::logic_error("no b with (iota(alpha) - b v)/d integral");
}

inline Integer find_b(const LatticeVector& alpha, const PrimEmbedding& emb) {
  require_primitive_isotropic(alpha);
  return find_b(emb.apply(alpha), emb.v(), divisibility(alpha));
}

/// H = sat<ι(α), v> in the basis (v, u), u = (b v − ι(α))/d.
struct HLattice {
  Sublattice span;
  LatticeVector v, u;
  Integer d, b;
  IntMatrix gram;  // Gram of (v, u)
};

inline HLattice h_lattice_of_marked_pair(const LatticeVector& image, const LatticeVector& v, const Integer& d) {
  const Integer b = find_b(image, v, d);
  LatticeVector u = (b * v - image).divided_by(d);
  Sublattice span(v.home(), {v, u});
  if (!span.same_span(saturate(Sublattice(v.home(), {image, v}))))
    throw std::logic_error("<v, u> is not the saturation of <iota(alpha), v>");
  IntMatrix g{{norm(v), pair(v, u)}, {pair(u, v), norm(u)}};
  return {std::move(span), v, std::move(u), d, b, std::move(g)};
}

inline HLattice h_lattice(const LatticeVector& alpha, const PrimEmbedding& emb) {
  require_primitive_isotropic(alpha);
  return h_lattice_of_marked_pair(emb.apply(alpha), emb.v(), divisibility(alpha));
}

/// ((2n+2)/d²) [[d², bd], [bd, b²]].
inline IntMatrix expected_h_gram(int n, const Integer& d, const Integer& b) {
  const Integer k = Integer(2 * n + 2) / (d * d);
  return IntMatrix{{k * d * d, k * b * d}, {k * b * d, k * b * b}};
}

/// Rows (i, j) and (b, −d) with id + jb = 1.
inline IntMatrix base_change_matrix(const Integer& d, const Integer& b) {
  const Bezout bz = ext_gcd(d, b);
  if (bz.g != 1) throw DomainError("gcd(d, b) must be 1");
  return IntMatrix{{bz.x, bz.y}, {b, -d}};
}

/// A G Aᵗ = ((2n+2)/d²)[[1,0],[0,0]] and det A = −1, where (v,v) = 2n+2 is read from G.
inline bool base_change_check(const Integer& d, const Integer& b, const IntMatrix& gram) {
  const IntMatrix a = base_change_matrix(d, b);
  if (determinant(a) != -1) return false;
  const Integer top = gram(0, 0);
  if (top % (d * d) != 0) return false;
  return a * gram * a.transpose() == IntMatrix{{top / (d * d), 0}, {0, 0}};
}

/// Invariant of a marked pair (image of α, v) inside a unimodular ambient lattice.
inline InvariantClass invariant_of_marked_pair(const LatticeVector& image, const LatticeVector& v,
                                               const Integer& d) {
  const Integer vv = norm(v);
  if (vv < 4 || vv % 2 != 0) throw DomainError("(v,v) must be 2n+2 with n >= 1");
  const int n = static_cast<int>(to_int64(vv / 2 - 1));
  if ((n + 1) % (d * d) != 0) throw std::logic_error("d^2 does not divide n+1");
  const HLattice h = h_lattice_of_marked_pair(image, v, d);
  if (h.gram != expected_h_gram(n, d, h.b)) throw std::logic_error("H has an unexpected Gram matrix");
  if (!base_change_check(d, h.b, h.gram)) throw std::logic_error("base change does not reach L_{n,d}");
  return {n, static_cast<int>(to_int64(d)), normalize_residue(h.b, d)};
}

inline InvariantClass theta(const LatticeVector& alpha, const PrimEmbedding& emb) {
  require_primitive_isotropic(alpha);
  return invariant_of_marked_pair(emb.apply(alpha), emb.v(), divisibility(alpha));
}

inline InvariantClass theta(const LatticeVector& alpha, int n) {
  if (kummer_n_of(alpha) != n) throw DomainError("vector does not live in Lambda_" + std::to_string(n));
  return theta(alpha, canonical_embedding(n));
}

inline InvariantClass theta(const LatticeVector& alpha) { return theta(alpha, kummer_n_of(alpha)); }

}  // namespace kummer
