#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "helpers.hpp"
#include "toricsyz/koszul.hpp"

using namespace toricsyz;
using namespace testing_support;

namespace {

std::vector<std::size_t> ring_dims(const GradedSectionRing& R) {
  std::vector<std::size_t> out;
  for (std::size_t d = 0; d <= R.max_degree(); ++d) out.push_back(R.dim(d));
  return out;
}

BettiTable table_of(const std::vector<Point>& V, std::size_t c, std::size_t max_i, std::size_t slope,
                    KoszulOptions opts = {}) {
  return betti_table(build_ring(poly(V), c, slope + 1), max_i, slope, opts);
}

void expect_matches_dense(const std::vector<Point>& V, std::size_t c, std::size_t max_i, std::size_t slope) {
  const auto table = table_of(V, c, max_i, slope);
  const oracle::DenseKoszul dense(verts(poly(V)), static_cast<long>(c), slope + 1);
  for (std::size_t i = 0; i <= max_i; ++i)
    for (std::size_t j = i; j <= i + slope; ++j)
      EXPECT_EQ(table.at(i, j), dense.betti(i, j)) << "c=" << c << " i=" << i << " j=" << j;
}

}  // namespace

TEST(SectionRing, Dimensions) {
  EXPECT_EQ(ring_dims(build_ring(poly(kCubic), 1, 3)), (std::vector<std::size_t>{1, 4, 10, 19}));
  EXPECT_EQ(ring_dims(build_ring(poly(kUnitTriangle), 1, 2)), (std::vector<std::size_t>{1, 3, 6}));
  EXPECT_EQ(ring_dims(build_ring(poly(kCubic), 2, 3)), (std::vector<std::size_t>{1, 10, 31, 64}));
  EXPECT_THROW(build_ring(poly(kCubic), 0, 3), InputError);
}

TEST(SectionRing, KeysMultiply) {
  const auto R = build_ring(poly(kSimplex112), 1, 3);
  for (std::size_t a = 0; a + 1 <= R.max_degree(); ++a)
    for (std::size_t u = 0; u < R.dim(a); ++u)
      for (std::size_t v = 0; v < R.dim_V(); ++v) {
        const auto idx = R.index_of(a + 1, R.key(a, u) + R.key(1, v));
        ASSERT_TRUE(idx);
        EXPECT_EQ(R.basis(a + 1)[*idx], R.basis(a)[u] + R.basis(1)[v]);
      }
}

TEST(Betti, CubicTriangle) {
  const auto t = table_of(kCubic, 1, 4, 3);
  EXPECT_EQ(t.entries(), (std::map<std::pair<std::size_t, std::size_t>, std::size_t>{{{0, 0}, 1}, {{1, 3}, 1}}));
  EXPECT_TRUE(k_polynomial_checksum(t));
}

TEST(Betti, UnitTriangleIsPolynomialRing) {
  const auto t = table_of(kUnitTriangle, 1, 3, 3);
  EXPECT_EQ(t.entries().size(), 1u);
  EXPECT_EQ(t.at(0, 0), 1u);
}

TEST(Betti, UnitSquareQuadric) {
  const auto t = table_of(kSquare, 1, 4, 3);
  EXPECT_EQ(t.entries(), (std::map<std::pair<std::size_t, std::size_t>, std::size_t>{{{0, 0}, 1}, {{1, 2}, 1}}));
}

TEST(Betti, Simplex112NotGeneratedInDegreeOne) {
  const auto R = build_ring(poly(kSimplex112), 1, 3);
  EXPECT_EQ(koszul_betti(R, 0, 2), 1u);
  EXPECT_EQ(koszul_betti(R, 0, 0), 1u);
}

TEST(Betti, AgreesWithDenseOracle) {
  expect_matches_dense(kUnitTriangle, 1, 3, 2);
  expect_matches_dense(kCubic, 1, 4, 3);
  expect_matches_dense(kSquare, 1, 4, 2);
  expect_matches_dense(kSimplex112, 1, 4, 2);
  expect_matches_dense(kUnitTriangle, 2, 3, 1);
  expect_matches_dense({{0, 0}, {2, 0}, {0, 1}}, 1, 3, 2);
  expect_matches_dense({{0, 0}, {1, 0}, {0, 1}, {1, 2}}, 1, 3, 2);
}

TEST(Betti, WindowErrors) {
  const auto R = build_ring(poly(kCubic), 1, 2);
  KoszulComplex K(R);
  EXPECT_THROW(K.betti(1, 3), WindowError);
  EXPECT_THROW(betti_table(R, 2, 2), WindowError);
  const auto t = betti_table(R, 1, 1);
  EXPECT_THROW(t.at(0, 5), WindowError);
}

TEST(KPolynomial, Examples) {
  EXPECT_EQ(k_polynomial(poly(kCubic), 1, 4, 5), (std::vector<Integer>{1, 0, 0, -1, 0, 0}));
  EXPECT_EQ(k_polynomial(poly(kUnitTriangle), 1, 3, 4), (std::vector<Integer>{1, 0, 0, 0, 0}));
  EXPECT_EQ(k_polynomial(poly(kSquare), 1, 4, 4), (std::vector<Integer>{1, 0, -1, 0, 0}));
}

TEST(KPolynomial, AgreesWithSeriesOracle) {
  for (const auto& V : {kCubic, kSquare, kSimplex112}) {
    for (long c = 1; c <= 2; ++c) {
      const auto P = poly(V);
      const auto dim_V = count_lattice_points(P, c);
      const auto expected = oracle::k_series(verts(P), c, 5);
      const auto got = k_polynomial(P, static_cast<std::size_t>(c), dim_V, 5);
      for (std::size_t j = 0; j <= 5; ++j) EXPECT_EQ(got[j], expected[j]) << "c=" << c << " j=" << j;
    }
  }
}

TEST(KPolynomial, ChecksumCatchesCorruption) {
  auto t = table_of(kCubic, 1, 4, 3);
  t.set(1, 3, 2);
  EXPECT_FALSE(k_polynomial_checksum(t));
}

TEST(Np, Examples) {
  const auto cubic1 = np_level(build_ring(poly(kCubic), 1, 5), 1, 4);
  ASSERT_EQ(cubic1.size(), 2u);
  EXPECT_EQ(cubic1[0].status, NpStatus::VerifiedUpTo);
  EXPECT_EQ(cubic1[0].bound, 4u);
  EXPECT_EQ(cubic1[1].status, NpStatus::Fails);
  EXPECT_EQ(*cubic1[1].certificate, (BettiCertificate{1, 3, 1}));

  const auto simplex2 = np_level(build_ring(poly(kSimplex112), 2, 4), 2, 3);
  EXPECT_FALSE(simplex2[1].fails());
  EXPECT_TRUE(simplex2[2].fails());

  const auto simplex1 = np_level(build_ring(poly(kSimplex112), 1, 4), 0, 3);
  EXPECT_TRUE(simplex1[0].fails());
  EXPECT_EQ(*simplex1[0].certificate, (BettiCertificate{0, 2, 1}));
}

TEST(Np, CubicSquared) {
  const auto v = np_level(build_ring(poly(kCubic), 2, 5), 4, 4);
  for (std::size_t p = 0; p <= 3; ++p) EXPECT_FALSE(v[p].fails()) << p;
  EXPECT_TRUE(v[4].fails());
}

TEST(KoszulProperties, DifferentialSquaresToZero) {
  for (const auto& V : {kCubic, kSimplex112}) {
    const auto R = build_ring(poly(V), 2, 3);
    KoszulComplex K(R);
    for (std::size_t i = 1; i <= 4; ++i)
      for (std::size_t j = i + 1; j <= i + 2; ++j) EXPECT_TRUE(K.d_squared_zero(i, j)) << i << "," << j;
  }
}

TEST(KoszulProperties, ModularMatchesExact) {
  KoszulOptions modular;
  modular.exact_threshold = 0;
  KoszulOptions exact;
  exact.certify = true;
  EXPECT_EQ(table_of(kCubic, 2, 4, 2, modular), table_of(kCubic, 2, 4, 2, exact));
  EXPECT_EQ(table_of(kSimplex112, 2, 3, 2, modular), table_of(kSimplex112, 2, 3, 2, exact));
}

TEST(KoszulProperties, ThreadCountIndependent) {
  KoszulOptions one, many;
  many.threads = 4;
  EXPECT_EQ(table_of(kCubic, 2, 4, 3, one), table_of(kCubic, 2, 4, 3, many));
}

TEST(KoszulProperties, StrandBookkeeping) {
  const auto R = build_ring(poly(kSimplex112), 2, 3);
  KoszulComplex K(R);
  for (std::size_t i = 0; i <= 3; ++i)
    for (std::size_t j = i; j <= i + 2; ++j) {
      const auto dim = K.chain_dim(i, j);
      const auto out = K.rank(i, j);
      EXPECT_LE(out + K.rank(i + 1, j), dim);
      EXPECT_EQ(K.betti(i, j), dim - out - K.rank(i + 1, j));
      if (i >= 1) EXPECT_EQ(K.betti(i, i), 0u);
    }
}

TEST(KoszulProperties, CorpusTables) {
  std::mt19937 rng(11);
  for (const auto& P : corpus()) {
    if (P.dim() != 2) continue;
    const auto R = build_ring(P, 1, 4);
    if (R.dim_V() > 12) continue;
    const auto t = betti_table(R, 2, 3);
    EXPECT_EQ(t.at(0, 0), 1u);
    EXPECT_TRUE(k_polynomial_checksum(t));
    const auto v = np_verdicts(t, 2);
    for (std::size_t p = 0; p + 1 < v.size(); ++p)
      if (v[p].fails()) EXPECT_TRUE(v[p + 1].fails());

    auto pts = lattice_points(P, 1);
    std::shuffle(pts.begin(), pts.end(), rng);
    EXPECT_EQ(betti_table(build_ring(normalize_full_dim(pts), 1, 4), 2, 3).entries(), t.entries());
    const auto Q = transform(P, unimodular(2), {1, -1});
    EXPECT_EQ(betti_table(build_ring(Q, 1, 4), 2, 3).entries(), t.entries());
  }
}
