#include "support.hpp"

#include <gtest/gtest.h>

#include <set>

using namespace kummer;
using kummer::fixtures::vec;

namespace {

// Straightforward scan over the box, used as an independent check of the enumerator.
std::set<Coords7> brute_force(int n, int bound) {
  std::set<Coords7> out;
  const auto l = kummer_lattice(n);
  Coords7 x{};
  auto rec = [&](auto&& self, std::size_t k) -> void {
    if (k == 7) {
      const std::int64_t q = 2 * (x[0] * x[1] + x[2] * x[3] + x[4] * x[5]) - (2 * n + 2) * x[6] * x[6];
      if (q != 0) return;
      bool any = false, first_positive = false;
      for (auto c : x)
        if (c != 0) {
          any = true;
          first_positive = c > 0;
          break;
        }
      if (!any || !first_positive) return;
      if (!is_primitive(to_vector(l, x))) return;
      out.insert(x);
      return;
    }
    for (std::int64_t c = -bound; c <= bound; ++c) {
      x[k] = c;
      self(self, k + 1);
    }
  };
  rec(rec, 0);
  return out;
}

}  // namespace

TEST(Enumerate, MatchesBruteForce) {
  for (auto [n, bound] : {std::pair{2, 2}, std::pair{3, 3}, std::pair{8, 3}}) {
    const auto fast = enumerate_isotropic_coords({n, bound, std::nullopt}, 2);
    EXPECT_EQ(std::set<Coords7>(fast.begin(), fast.end()), brute_force(n, bound)) << "n=" << n;
    EXPECT_TRUE(std::is_sorted(fast.begin(), fast.end()));
  }
}

TEST(Enumerate, Examples) {
  const auto l = kummer_lattice(3);
  const auto all = enumerate_isotropic({3, 2, std::nullopt});
  const auto has = [&](const std::vector<Integer>& c) {
    return std::find(all.begin(), all.end(), vec(l, c)) != all.end();
  };
  EXPECT_TRUE(has({2, 2, 0, 0, 0, 0, 1}));
  EXPECT_TRUE(has({1, 0, 0, 0, 0, 0, 0}));
  EXPECT_FALSE(has({-1, 0, 0, 0, 0, 0, 0}));
  EXPECT_FALSE(has({2, 0, 0, 0, 0, 0, 0}));
  for (const auto& a : all) {
    EXPECT_EQ(norm(a), 0);
    EXPECT_TRUE(is_primitive(a));
  }
  EXPECT_TRUE(enumerate_isotropic({3, 0, std::nullopt}).empty());
  EXPECT_THROW(enumerate_isotropic({3, -1, std::nullopt}), DomainError);
  EXPECT_TRUE(enumerate_isotropic({3, 2, 3}).empty());
}

TEST(Enumerate, DivisibilityFilter) {
  const auto only2 = enumerate_isotropic({3, 3, 2});
  ASSERT_FALSE(only2.empty());
  for (const auto& a : only2) EXPECT_EQ(divisibility(a), 2);
  std::size_t count2 = 0;
  for (const auto& a : enumerate_isotropic({3, 3, std::nullopt})) count2 += divisibility(a) == 2;
  EXPECT_EQ(only2.size(), count2);
}

TEST(Enumerate, DeterministicAcrossThreadCounts) {
  const EnumerationConfig cfg{8, 4, std::nullopt};
  const auto one = enumerate_isotropic_coords(cfg, 1);
  EXPECT_EQ(enumerate_isotropic_coords(cfg, 3), one);
  EXPECT_EQ(enumerate_isotropic_coords(cfg, 8), one);
}

TEST(Census, SmallCase) {
  const EnumerationConfig cfg{3, 3, std::nullopt};
  const Census c = isotropic_census(cfg, 2);
  const auto all = enumerate_isotropic(cfg);
  EXPECT_EQ(c.total, static_cast<std::int64_t>(all.size()));
  std::map<int, std::int64_t> by_d;
  std::map<std::pair<int, int>, std::int64_t> by_class;
  for (const auto& a : all) {
    const InvariantClass cls = theta(a);
    ++by_d[cls.d];
    ++by_class[{cls.d, cls.b}];
  }
  EXPECT_EQ(c.by_divisibility, by_d);
  EXPECT_EQ(c.by_class, by_class);
  EXPECT_EQ(c.by_divisibility.size(), 2u);
}

TEST(DefaultBound, Values) {
  EXPECT_EQ(default_bound(3), 5);
  EXPECT_EQ(default_bound(24), 20);
  EXPECT_EQ(default_bound(8), 5);
}

TEST(EichlerReduce, Examples) {
  const auto l3 = kummer_lattice(3);
  const EichlerReduction r = eichler_reduce(vec(l3, {2, 2, 0, 0, 0, 0, 1}));
  EXPECT_EQ(r.canonical, vec(l3, {2, 2, 0, 0, 0, 0, 1}));
  EXPECT_TRUE(r.word.moves.empty());

  const auto l8 = kummer_lattice(8);
  const auto alpha = vec(l8, {3, 12, 0, 0, 0, 0, 2});
  const EichlerReduction r8 = eichler_reduce(alpha);
  EXPECT_EQ(r8.canonical, sigma_witness(l8, 3, 1));
  std::vector<Integer> x = alpha.coords();
  r8.word.apply(x, l8->gram());
  EXPECT_EQ(x, r8.canonical.coords());
  const Isometry g = r8.word.composite(l8);
  EXPECT_EQ(g.apply(alpha), r8.canonical);
  EXPECT_TRUE(mon2_contains(g));

  EXPECT_EQ(eichler_reduce(vec(l3, {0, 0, 0, 1, 0, 0, 0})).canonical, LatticeVector::basis(l3, 0));
  EXPECT_THROW(eichler_reduce(vec(l3, {2, 0, 0, 0, 0, 0, 0})), DomainError);
}

TEST(EichlerReduce, MovesAreMonodromy) {
  fixtures::Rng rng(60);
  for (int n : {3, 8, 24}) {
    const auto l = kummer_lattice(n);
    MoveCertifier cert(l);
    for (int d : admissible_divisibilities(n))
      for (const auto& cls : sigma_classes(n, d)) {
        for (int i = 0; i < 5; ++i) {
          const Isometry g = fixtures::random_monodromy(rng, l, 3);
          const auto alpha = g.apply(sigma_witness(l, d, cls.b));
          const EichlerReduction r = eichler_reduce(alpha);
          EXPECT_EQ(r.canonical, sigma_witness(l, d, cls.b));
          for (const auto& m : r.word.moves) EXPECT_TRUE(cert.certify(m)) << m.describe();
          EXPECT_EQ(r.word.composite(l).apply(alpha), r.canonical);
        }
      }
  }
}

TEST(Moves, Certification) {
  const auto l = kummer_lattice(3);
  MoveCertifier cert(l);
  std::vector<Integer> u(7), w(7), bad(7);
  u[2] = 1;
  u[3] = -1;
  w[4] = 1;
  w[5] = 1;
  bad[4] = 1;
  bad[5] = 2;
  // Each ρ of a root lies outside Mon², so any product of two of them lies inside.
  EXPECT_TRUE(cert.certify(Move::rho_pair(u, w)));
  EXPECT_TRUE(cert.certify(Move::rho_pair(u, u)));
  EXPECT_FALSE(cert.certify(Move::rho_pair(u, bad)));
  EXPECT_EQ(cert.distinct(), 3u);
  EXPECT_TRUE(cert.certify(Move::rho_pair(u, w)));
  EXPECT_EQ(cert.distinct(), 3u);
}

TEST(Verify, Suites) {
  for (auto [n, d] : {std::pair{3, 1}, std::pair{3, 2}, std::pair{8, 3}}) {
    const EnumerationConfig cfg{n, 3, d};
    const Report lem = verify_lemmas(cfg, 2);
    EXPECT_TRUE(lem.passed()) << (lem.failures.empty() ? "vacuous" : lem.failures.front());
    const Report fa = verify_faithful(cfg, 2);
    EXPECT_TRUE(fa.passed()) << (fa.failures.empty() ? "vacuous" : fa.failures.front());
    const Report su = verify_surjective(n, d);
    EXPECT_TRUE(su.passed());
  }
  const Report empty = verify_lemmas({3, 0, std::nullopt}, 1);
  EXPECT_TRUE(empty.vacuous());
  EXPECT_FALSE(empty.passed());
}

TEST(OrbitTransporter, Property) {
  fixtures::Rng rng(61);
  for (int planes : {2, 3, 4}) {
    const auto u = hyperbolic_sum(planes);
    for (int i = 0; i < 30; ++i) {
      const auto v1 = fixtures::random_vector(rng, u, 5);
      if (!is_primitive(v1)) continue;
      // Image under a random word of transvections.
      Isometry h = Isometry::identity(u);
      for (int k = 0; k < 3; ++k) {
        const std::size_t e = static_cast<std::size_t>(fixtures::uniform(rng, 0, 2 * planes - 1));
        std::vector<Integer> a = fixtures::random_vector(rng, u, 2).coords();
        a[e] = a[e ^ 1] = 0;
        h = transvection(LatticeVector::basis(u, e), LatticeVector(u, a)) * h;
      }
      const auto v2 = h.apply(v1);
      const Isometry g = orbit_transporter(v1, v2);
      EXPECT_EQ(g.apply(v1), v2);
      EXPECT_TRUE(g.integral());
      EXPECT_TRUE(g.preserves_form());
    }
  }
  const auto u2 = hyperbolic_sum(2);
  EXPECT_THROW(orbit_transporter(vec(u2, {1, 0, 0, 0}), vec(u2, {1, 1, 0, 0})), DomainError);
  EXPECT_THROW(orbit_transporter(vec(u2, {2, 0, 0, 0}), vec(u2, {2, 0, 0, 0})), DomainError);
  EXPECT_THROW(orbit_transporter(LatticeVector::basis(hyperbolic_plane(), 0), LatticeVector::basis(hyperbolic_plane(), 0)),
               DomainError);
}
