#include <gtest/gtest.h>

#include "helpers.hpp"
#include "toricsyz/semigroup.hpp"

using namespace toricsyz;
using namespace testing_support;

TEST(Normality, UnitSimplices) {
  for (std::size_t n = 1; n <= 4; ++n) EXPECT_TRUE(is_normal(poly(unit_simplex(n))).normal);
}

TEST(Normality, Simplex112) {
  const auto report = is_normal(poly(kSimplex112));
  EXPECT_FALSE(report.normal);
  ASSERT_TRUE(report.witness);
  EXPECT_EQ(report.witness->point, (LatticePoint{1, 1, 1}));
  EXPECT_EQ(report.witness->m, 2u);
  EXPECT_EQ(report.checked_up_to, 2u);
}

TEST(Normality, DoubledSimplex112) {
  std::vector<Point> doubled;
  for (const auto& v : kSimplex112) doubled.push_back({2 * v[0], 2 * v[1], 2 * v[2]});
  const auto report = is_normal(poly(doubled));
  EXPECT_TRUE(report.normal);
  EXPECT_EQ(report.checked_up_to, 2u);
}

TEST(Normality, BoundIsConfigurable) {
  EXPECT_EQ(default_normality_bound(poly(unit_simplex(4))), 3u);
  EXPECT_EQ(default_normality_bound(poly(kCubic)), 2u);
  EXPECT_EQ(is_normal(poly(kCubic), 4).checked_up_to, 4u);
  EXPECT_TRUE(is_normal(poly(kSimplex112), 1).normal);  // m = 1 is trivial
}

TEST(Decompose, Examples) {
  const auto C = poly(kCubic);
  const auto parts = decompose(C, LatticePoint{3, 3}, 3);
  ASSERT_TRUE(parts);
  ASSERT_EQ(parts->size(), 3u);
  LatticePoint sum = LatticePoint::zero(2);
  for (const auto& p : *parts) {
    EXPECT_TRUE(contains(C, 1, p));
    sum += p;
  }
  EXPECT_EQ(sum, (LatticePoint{3, 3}));
  EXPECT_FALSE(decompose(poly(kSimplex112), LatticePoint{1, 1, 1}, 2));
  for (const auto& g : lattice_points(C, 1)) EXPECT_EQ(decompose(C, g, 1), std::vector<LatticePoint>{g});
  EXPECT_THROW(decompose(C, LatticePoint{5, 5}, 1), InputError);
}

TEST(NormalityProperties, Corpus) {
  for (const auto& P : corpus()) {
    const auto report = is_normal(P);
    if (report.witness) {
      EXPECT_TRUE(contains(P, static_cast<long>(report.witness->m), report.witness->point));
      EXPECT_FALSE(decompose(P, report.witness->point, report.witness->m));
    }
    const auto Q = transform(P, unimodular(P.dim()), Point(P.dim(), -2));
    EXPECT_EQ(is_normal(Q).normal, report.normal);
  }
}

TEST(NormalityProperties, SumsetInsideDilation) {
  for (const auto& P : corpus()) {
    if (P.dim() != 2) continue;
    const auto gens = lattice_points(P, 1);
    for (const auto& a : gens)
      for (const auto& b : gens) EXPECT_TRUE(contains(P, 2, a + b));
  }
}
