#pragma once

// Constructive Eichler reduction by transvections inside sums of hyperbolic planes.
//
// For planes i and j with coordinates (a_i, b_i, a_j, b_j) on (e_i, f_i, e_j, f_j), the matrix
//     M = [[a_i, a_j], [-b_j, b_i]]      with det M = a_i b_i + a_j b_j
// carries the elementary SL2 row and column operations as transvections:
//     R1 += k R2   <->  E(e_i,  k e_j)        C2 += k C1  <->  E(f_i,  k e_j)
//     R2 += k R1   <->  E(f_i, -k f_j)        C1 += k C2  <->  E(e_i, -k f_j)
// Euclid on M brings the plane pair to g e_i + h f_i with g = gcd of the four coordinates.

#include "kummer/arith.hpp"
#include "kummer/isometry.hpp"
#include "kummer/lattice.hpp"

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

namespace kummer {

/// One transvection E(e, a) with e a basis vector of a hyperbolic plane.
struct TransvectionStep {
  std::size_t e_index = 0;
  std::vector<Integer> a;  // coordinates of a

  /// Applies the step to coordinates, using the Gram matrix of the home lattice.
  void apply(std::vector<Integer>& x, const IntMatrix& gram) const {
    Integer xe = 0, xa = 0, aa = 0;
    const std::size_t n = x.size();
    for (std::size_t j = 0; j < n; ++j) {
      if (gram(e_index, j) != 0) xe += gram(e_index, j) * x[j];
      for (std::size_t i = 0; i < n; ++i) {
        if (a[i] == 0 || gram(i, j) == 0) continue;
        xa += a[i] * gram(i, j) * x[j];
        aa += a[i] * gram(i, j) * a[j];
      }
    }
    if (xe != 0)
      for (std::size_t i = 0; i < n; ++i) x[i] += xe * a[i];
    x[e_index] -= xa + (aa / 2) * xe;
  }

  TransvectionStep inverse() const {
    TransvectionStep s = *this;
    for (auto& c : s.a) c = -c;
    return s;
  }

  Isometry isometry(const LatticePtr& home) const {
    return transvection(LatticeVector::basis(home, e_index), LatticeVector(home, a));
  }

  friend bool operator==(const TransvectionStep&, const TransvectionStep&) = default;
  friend auto operator<=>(const TransvectionStep& l, const TransvectionStep& r) {
    if (l.e_index != r.e_index) return l.e_index <=> r.e_index;
    return l.a < r.a ? std::strong_ordering::less
                     : (r.a < l.a ? std::strong_ordering::greater : std::strong_ordering::equal);
  }
};

namespace detail {

class PlaneReducer {
 public:
  PlaneReducer(std::vector<Integer>& x, const IntMatrix& gram, std::vector<TransvectionStep>& steps)
      : x_(x), gram_(gram), steps_(steps) {}

  // Brings plane j to zero and plane i to (g, h) with g > 0 (or everything to zero).
  void reduce(std::size_t i, std::size_t j) {
    i_ = i;
    j_ = j;
    for (std::size_t guard = 0;; ++guard) {
      if (guard > 10000) throw std::logic_error("plane reduction did not terminate");
      if (m00() == 0 && m01() == 0 && m10() == 0 && m11() == 0) return;
      while (m10() != 0) {
        if (m00() == 0) row12(1);
        row21(-(m10() / m00()));
        if (m10() != 0) row12(-(m00() / m10()));
      }
      while (m01() != 0) {
        if (m00() == 0) col12(1);
        col21(-(m01() / m00()));
        if (m01() != 0) col12(-(m00() / m01()));
      }
      if (m10() != 0) continue;
      if (m00() == 0 || m11() % m00() != 0) {
        row12(1);
        continue;
      }
      break;
    }
    if (m00() < 0) {
      // -I as two signed row swaps (R1, R2) -> (R2, -R1).
      for (int k = 0; k < 2; ++k) {
        row12(1);
        row21(-1);
        row12(1);
      }
    }
  }

 private:
  Integer m00() const { return x_[2 * i_]; }
  Integer m01() const { return x_[2 * j_]; }
  Integer m10() const { return -x_[2 * j_ + 1]; }
  Integer m11() const { return x_[2 * i_ + 1]; }

  void push(std::size_t e_index, std::size_t a_index, const Integer& k) {
    if (k == 0) return;
    TransvectionStep s{e_index, std::vector<Integer>(x_.size())};
    s.a[a_index] = k;
    s.apply(x_, gram_);
    steps_.push_back(std::move(s));
  }
  void row12(const Integer& k) { push(2 * i_, 2 * j_, k); }           // E(e_i, k e_j)
  void row21(const Integer& k) { push(2 * i_ + 1, 2 * j_ + 1, -k); }  // E(f_i, -k f_j)
  void col21(const Integer& k) { push(2 * i_ + 1, 2 * j_, k); }       // E(f_i, k e_j)
  void col12(const Integer& k) { push(2 * i_, 2 * j_ + 1, -k); }      // E(e_i, -k f_j)

  std::vector<Integer>& x_;
  const IntMatrix& gram_;
  std::vector<TransvectionStep>& steps_;
  std::size_t i_ = 0, j_ = 0;
};

}  // namespace detail

/// Reduces the part of x in the first `planes` hyperbolic planes to g e_1 + h f_1,
/// g = gcd of those coordinates. Returns the transvections in application order.
inline std::vector<TransvectionStep> reduce_hyperbolic_part(std::vector<Integer>& x, const IntMatrix& gram,
                                                            std::size_t planes) {
  std::vector<TransvectionStep> steps;
  detail::PlaneReducer r(x, gram, steps);
  for (std::size_t p = planes; p-- > 1;) r.reduce(p - 1, p);
  return steps;
}

/// Applies a step list in order.
inline void apply_steps(std::vector<Integer>& x, const std::vector<TransvectionStep>& steps, const IntMatrix& gram) {
  for (const auto& s : steps) s.apply(x, gram);
}

/// Applies the inverse of a step list (inverse steps in reverse order).
inline void apply_inverse_steps(std::vector<Integer>& x, const std::vector<TransvectionStep>& steps,
                                const IntMatrix& gram) {
  for (auto it = steps.rbegin(); it != steps.rend(); ++it) it->inverse().apply(x, gram);
}

inline bool is_isotropic(const LatticeVector& x) { return norm(x) == 0; }

/// u with (u, alpha) = 0 and (u, u) = 2*sign, for alpha primitive isotropic in Λ_n.
inline LatticeVector find_root(const LatticeVector& alpha, int sign) {
  if (sign != 1 && sign != -1) throw DomainError("sign must be +1 or -1");
  if (!kummer_index(*alpha.home())) throw DomainError("find_root expects a vector of a Kummer lattice");
  if (alpha.is_zero() || !is_primitive(alpha) || !is_isotropic(alpha))
    throw DomainError("alpha must be primitive and isotropic");
  const IntMatrix& gram = alpha.home()->gram();
  std::vector<Integer> x = alpha.coords();
  auto steps = reduce_hyperbolic_part(x, gram, 3);
  // After reduction alpha lives in U_1 + <delta>; pull back e3 ± f3.
  std::vector<Integer> u(alpha.size());
  u[4] = 1;
  u[5] = sign;
  apply_inverse_steps(u, steps, gram);
  LatticeVector root(alpha.home(), std::move(u));
  if (pair(root, alpha) != 0 || norm(root) != 2 * sign) throw std::logic_error("find_root postcondition failed");
  return root;
}

}  // namespace kummer
