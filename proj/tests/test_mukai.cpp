#include "support.hpp"

#include <gtest/gtest.h>

using namespace kummer;

TEST(Mukai, PairingExamples) {
  const MukaiVector v(1, {0, 0, 0, 0, 0, 0}, -3);
  EXPECT_EQ(mukai_pair(v, v), 6);
  const MukaiVector w(0, {1, 1, 0, 0, 0, 0}, 0);
  EXPECT_EQ(mukai_pair(w, w), 2);
  EXPECT_EQ(mukai_pair(MukaiVector(0, {0, 0, 0, 0, 0, 0}, 1), MukaiVector(1, {0, 0, 0, 0, 0, 0}, 0)), -1);
  // Agrees with the Gram model of H*(S).
  const auto h = mukai_cohomology_lattice();
  EXPECT_EQ(pair(v.to_lattice(h), w.to_lattice(h)), mukai_pair(v, w));
  EXPECT_EQ(MukaiVector::from_lattice(v.to_lattice(h)), v);
}

TEST(Mukai, PairingMatchesGramProperty) {
  fixtures::Rng rng(50);
  const auto h = mukai_cohomology_lattice();
  for (int i = 0; i < 200; ++i) {
    const auto x = fixtures::random_vector(rng, h, 7), y = fixtures::random_vector(rng, h, 7);
    EXPECT_EQ(mukai_pair(MukaiVector::from_lattice(x), MukaiVector::from_lattice(y)), pair(x, y));
  }
  EXPECT_EQ(h->det(), 1);
  EXPECT_EQ(h->signature().positive, 4u);
}

TEST(Mukai, Positivity) {
  EXPECT_TRUE(is_positive(MukaiVector(1, {0, 0, 0, 0, 0, 0}, 5)));
  EXPECT_FALSE(is_positive(MukaiVector(-1, {0, 0, 0, 0, 0, 0}, 5)));
  EXPECT_TRUE(is_positive(MukaiVector(0, {0, 0, 0, 0, 0, 0}, -1)));
  EXPECT_FALSE(is_positive(MukaiVector(0, {0, 0, 0, 0, 0, 0}, 1)));
  EXPECT_TRUE(is_positive(MukaiVector(0, {2, 2, 0, 0, 0, 0}, 1)));
  EXPECT_FALSE(is_positive(MukaiVector(0, {2, 2, 0, 0, 0, 0}, 0)));
  EXPECT_FALSE(is_positive(MukaiVector(0, {-2, -2, 0, 0, 0, 0}, 1)));
  EXPECT_FALSE(is_positive(MukaiVector(0, {2, 2, 0, 0, 0, 0}, 1), false));
}

TEST(Mukai, ModuliDimension) {
  EXPECT_EQ(moduli_dimension(MukaiVector(1, {0, 0, 0, 0, 0, 0}, -3)), 4);
  EXPECT_EQ(moduli_dimension(MukaiVector(0, {2, 2, 0, 0, 0, 0}, 1)), 6);
  try {
    moduli_dimension(MukaiVector(0, {1, 1, 0, 0, 0, 0}, 1));
    FAIL();
  } catch (const DomainError& e) {
    EXPECT_NE(std::string(e.what()).find("threshold of 6"), std::string::npos);
  }
}

TEST(Mukai, PerpLattice) {
  for (int n : {2, 3, 8}) {
    const MukaiVector v(1, {0, 0, 0, 0, 0, 0}, -(n + 1));
    ASSERT_EQ(mukai_pair(v, v), 2 * n + 2);
    const auto perp = perp_lattice(v).as_lattice("perp");
    EXPECT_EQ(perp->rank(), 7u);
    EXPECT_EQ(perp->signature().positive, 3u);
    EXPECT_EQ(perp->signature().negative, 4u);
    EXPECT_EQ(abs(perp->det()), 2 * n + 2);
  }
  EXPECT_THROW(perp_lattice(MukaiVector(2, {0, 0, 0, 0, 0, 0}, -4)), DomainError);
  EXPECT_THROW(perp_lattice(MukaiVector(1, {0, 0, 0, 0, 0, 0}, -1)), DomainError);
}

TEST(PolType, Construction) {
  EXPECT_THROW(PolType({2, 3}), DomainError);
  EXPECT_THROW(PolType({0, 3}), DomainError);
  EXPECT_EQ(PolType({1, 2, 4}).product(), 8);
  EXPECT_EQ(PolType({1, 1, 3}).str(), "(1,1,3)");
  EXPECT_EQ(poltype_from_primitive_square(8), PolType({1, 4}));
  EXPECT_THROW(poltype_from_primitive_square(7), DomainError);
}

TEST(PolType, DualAndComplement) {
  EXPECT_EQ(dual_poltype(PolType({1, 2, 4})), PolType({1, 2, 4}));
  EXPECT_EQ(dual_poltype(PolType({1, 1, 4})), PolType({1, 4, 4}));
  EXPECT_EQ(dual_poltype(PolType({2, 6})), PolType({2, 6}));
  EXPECT_EQ(complementary_poltype(PolType({2, 4}), 4), PolType({1, 1, 2, 4}));
  try {
    complementary_poltype(PolType({1, 2, 4}), 2);
    FAIL();
  } catch (const DomainError& e) {
    EXPECT_STREQ(e.what(), "dim A >= dim B violated");
  }
}

TEST(PolType, DualIsInvolution) {
  const std::vector<std::vector<std::int64_t>> types{{1, 1, 1, 6}, {1, 2, 2, 4}, {1, 3, 6, 12, 24}, {2, 2, 2}, {1, 5}};
  for (const auto& t : types) {
    const PolType p(t);
    EXPECT_EQ(dual_poltype(dual_poltype(p)), p);
    EXPECT_EQ(dual_poltype(p)[0], p[0]);
    EXPECT_EQ(dual_poltype(p)[p.size() - 1], p[p.size() - 1]);
  }
}

TEST(PolType, KummerFibration) {
  EXPECT_EQ(kummer_fibration_poltype(3, 1), PolType({1, 1, 4}));
  EXPECT_EQ(kummer_fibration_poltype(3, 2), PolType({1, 2, 2}));
  EXPECT_EQ(kummer_fibration_poltype(8, 3), PolType({1, 1, 1, 1, 1, 1, 3, 3}));
  EXPECT_THROW(kummer_fibration_poltype(8, 2), DomainError);
  EXPECT_THROW(kummer_fibration_poltype(1, 1), DomainError);
  EXPECT_EQ(bm_system_poltype(2, 2, 3), PolType({1, 2, 2}));
  EXPECT_THROW(bm_system_poltype(2, 3, 5), DomainError);
  EXPECT_THROW(bm_system_poltype(1, 4, 5), DomainError);
  for (int n = 2; n <= 60; ++n)
    for (int d : admissible_divisibilities(n)) {
      const PolType k = kummer_fibration_poltype(n, d);
      EXPECT_EQ(k, bm_system_poltype(d, (n + 1) / d, n));
      EXPECT_EQ(k.product(), n + 1);
      EXPECT_EQ(k.size(), static_cast<std::size_t>(n));
    }
}

TEST(Witness, Examples) {
  const BmWitness w = bm_witness(3, 2, 1);
  EXPECT_EQ(w.v, MukaiVector(0, {2, 2, 0, 0, 0, 0}, 1));
  EXPECT_EQ(w.v_square, 8);
  EXPECT_EQ(w.alpha_divisibility, 2);
  EXPECT_TRUE(w.integrality);
  EXPECT_EQ(w.invariant, (InvariantClass{3, 2, 1}));
  EXPECT_EQ(w.poltype, PolType({1, 2, 2}));

  const BmWitness w8 = bm_witness(8, 3, 2);
  EXPECT_EQ(w8.s, 2);
  EXPECT_EQ(w8.invariant, (InvariantClass{8, 3, 1}));

  EXPECT_THROW(bm_witness(3, 2, 2), DomainError);
  EXPECT_THROW(bm_witness(3, 3, 1), DomainError);
  EXPECT_THROW(bm_witness(1, 1, 0), DomainError);
}

TEST(Witness, AllAdmissibleClasses) {
  for (int n = 2; n <= 24; ++n)
    for (int d : admissible_divisibilities(n))
      for (const auto& cls : sigma_classes(n, d)) {
        const BmWitness w = bm_witness(n, d, cls.b);
        EXPECT_EQ(w.v_square, 2 * n + 2);
        EXPECT_EQ(w.alpha_divisibility, d);
        EXPECT_TRUE(w.integrality);
        EXPECT_EQ(w.invariant, cls);
        EXPECT_EQ(w.poltype, kummer_fibration_poltype(n, d));
      }
}
