#include "support.hpp"

#include <gtest/gtest.h>

using namespace kummer;
using kummer::fixtures::vec;

TEST(Eichler, StepMatchesTransvectionIsometry) {
  fixtures::Rng rng(30);
  const auto l = kummer_lattice(3);
  for (int i = 0; i < 40; ++i) {
    const std::size_t e = static_cast<std::size_t>(fixtures::uniform(rng, 0, 5));
    std::vector<Integer> a = fixtures::random_vector(rng, l, 4).coords();
    a[e] = 0;
    a[e ^ 1] = 0;
    const TransvectionStep s{e, a};
    const auto x = fixtures::random_vector(rng, l, 10);
    std::vector<Integer> y = x.coords();
    s.apply(y, l->gram());
    EXPECT_EQ(y, s.isometry(l).apply(x).coords());
    s.inverse().apply(y, l->gram());
    EXPECT_EQ(y, x.coords());
  }
}

TEST(Eichler, HyperbolicReductionReachesGcd) {
  fixtures::Rng rng(31);
  const auto m = mukai_lattice();
  for (int i = 0; i < 200; ++i) {
    const auto x = fixtures::random_vector(rng, m, 12);
    std::vector<Integer> y = x.coords();
    const auto steps = reduce_hyperbolic_part(y, m->gram(), 4);
    EXPECT_EQ(y[0], gcd(x.coords()));
    for (std::size_t k = 2; k < 8; ++k) EXPECT_EQ(y[k], 0);
    EXPECT_EQ(2 * y[0] * y[1], norm(x));
    apply_inverse_steps(y, steps, m->gram());
    EXPECT_EQ(y, x.coords());
  }
}

TEST(Eichler, ReductionKeepsDelta) {
  fixtures::Rng rng(32);
  const auto l = kummer_lattice(8);
  for (int i = 0; i < 100; ++i) {
    const auto x = fixtures::random_vector(rng, l, 9);
    std::vector<Integer> y = x.coords();
    reduce_hyperbolic_part(y, l->gram(), 3);
    EXPECT_EQ(y[kDelta], x[kDelta]);
    std::vector<Integer> u(x.coords().begin(), x.coords().begin() + 6);
    EXPECT_EQ(y[0], gcd(u));
  }
}

TEST(FindRoot, Examples) {
  const auto l3 = kummer_lattice(3);
  const auto e1 = LatticeVector::basis(l3, 0);
  const auto u = find_root(e1, -1);
  EXPECT_EQ(norm(u), -2);
  EXPECT_EQ(pair(u, e1), 0);
  // e2 - f2 is one valid answer; check it satisfies the same postconditions.
  const auto e2f2 = vec(l3, {0, 0, 1, -1, 0, 0, 0});
  EXPECT_EQ(norm(e2f2), -2);
  EXPECT_EQ(pair(e2f2, e1), 0);

  const auto alpha = vec(l3, {2, 2, 0, 0, 0, 0, 1});
  const auto r = find_root(alpha, 1);
  EXPECT_EQ(norm(r), 2);
  EXPECT_EQ(pair(r, alpha), 0);
}

TEST(FindRoot, Errors) {
  const auto l = kummer_lattice(3);
  EXPECT_THROW(find_root(vec(l, {1, 1, 0, 0, 0, 0, 0}), 1), DomainError);
  EXPECT_THROW(find_root(vec(l, {2, 0, 0, 0, 0, 0, 0}), 1), DomainError);
  EXPECT_THROW(find_root(LatticeVector::basis(l, 0), 0), DomainError);
  EXPECT_THROW(find_root(LatticeVector::basis(mukai_lattice(), 0), 1), DomainError);
}

TEST(FindRoot, PropertyOnEnumeratedClasses) {
  for (int n : {2, 3, 8}) {
    for (const auto& alpha : enumerate_isotropic({n, 3, std::nullopt})) {
      for (int s : {1, -1}) {
        const auto u = find_root(alpha, s);
        ASSERT_EQ(norm(u), 2 * s);
        ASSERT_EQ(pair(u, alpha), 0);
      }
    }
  }
}
