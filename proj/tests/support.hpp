#pragma once

#include "kummer/kummer.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace kummer::fixtures {

using Rng = std::mt19937_64;

inline std::int64_t uniform(Rng& rng, std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

inline LatticeVector random_vector(Rng& rng, const LatticePtr& l, std::int64_t range) {
  std::vector<Integer> c(l->rank());
  for (auto& x : c) x = uniform(rng, -range, range);
  return {l, std::move(c)};
}

/// A vector of norm 2*sign in Λ_n (rank 7) or a sum of hyperbolic planes, built by solving for b3.
inline LatticeVector random_root(Rng& rng, const LatticePtr& l, int sign, std::int64_t range = 3) {
  const std::size_t rank = l->rank();
  const Integer tail = rank == 7 ? -l->gram()(6, 6) / 2 : Integer(0);  // n+1 for Λ_n
  for (;;) {
    std::vector<Integer> c(rank);
    for (auto& x : c) x = uniform(rng, -range, range);
    const std::int64_t a3 = uniform(rng, 0, 1) ? 1 : -1;
    c[4] = a3;
    Integer rest = 0;
    for (std::size_t k = 0; k < 6; k += 2)
      if (k != 4) rest += c[k] * c[k + 1];
    for (std::size_t k = 6; k + 1 < rank && rank != 7; k += 2) rest += c[k] * c[k + 1];
    if (rank == 7) rest -= tail * c[6] * c[6];
    c[5] = (sign - rest) / a3;
    LatticeVector u(l, std::move(c));
    if (norm(u) == 2 * sign) return u;
  }
}

/// A transvection E(e, a) with e a basis vector of one of the first three planes.
inline Isometry random_transvection(Rng& rng, const LatticePtr& l, std::int64_t range = 2) {
  const std::size_t e_index = static_cast<std::size_t>(uniform(rng, 0, 5));
  LatticeVector a = random_vector(rng, l, range);
  std::vector<Integer> c = a.coords();
  c[e_index ^ 1] = 0;
  c[e_index] = 0;
  return transvection(LatticeVector::basis(l, e_index), LatticeVector(l, std::move(c)));
}

/// Word in reflections R_u ((u,u) = ±2) and transvections.
inline Isometry random_isometry(Rng& rng, const LatticePtr& l, int length) {
  Isometry g = Isometry::identity(l);
  for (int i = 0; i < length; ++i) {
    if (uniform(rng, 0, 1)) g = random_transvection(rng, l) * g;
    else g = reflection(random_root(rng, l, uniform(rng, 0, 1) ? 1 : -1)) * g;
  }
  return g;
}

/// Word in transvections and products of two ρ-reflections, all in the monodromy group.
inline Isometry random_monodromy(Rng& rng, const LatticePtr& l, int length) {
  Isometry g = Isometry::identity(l);
  for (int i = 0; i < length; ++i) {
    if (uniform(rng, 0, 1)) {
      g = random_transvection(rng, l) * g;
    } else {
      const int s1 = uniform(rng, 0, 1) ? 1 : -1, s2 = uniform(rng, 0, 1) ? 1 : -1;
      g = rho(random_root(rng, l, s1)) * rho(random_root(rng, l, s2)) * g;
    }
  }
  return g;
}

inline LatticeVector vec(const LatticePtr& l, std::vector<Integer> c) { return {l, std::move(c)}; }

}  // namespace kummer::fixtures
