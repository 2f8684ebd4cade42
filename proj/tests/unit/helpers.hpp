#pragma once

#include <vector>

#include "oracles/oracles.hpp"
#include "toricsyz/corpus.hpp"
#include "toricsyz/lattice.hpp"

namespace testing_support {

using oracle::Point;

inline toricsyz::LatticePoint lp(const Point& p) {
  toricsyz::LatticePoint out;
  for (long c : p) out.coords.emplace_back(c);
  return out;
}

inline Point op(const toricsyz::LatticePoint& p) {
  Point out;
  for (const auto& c : p.coords) out.push_back(c.get_si());
  return out;
}

inline toricsyz::LatticePolytope poly(const std::vector<Point>& pts) {
  std::vector<toricsyz::LatticePoint> v;
  for (const auto& p : pts) v.push_back(lp(p));
  return toricsyz::normalize_full_dim(std::move(v));
}

inline std::vector<Point> verts(const toricsyz::LatticePolytope& P) {
  std::vector<Point> out;
  for (const auto& v : P.vertices()) out.push_back(op(v));
  return out;
}

inline const std::vector<Point> kUnitTriangle{{0, 0}, {1, 0}, {0, 1}};
inline const std::vector<Point> kCubic{{1, 0}, {0, 1}, {1, 1}, {2, 2}};
inline const std::vector<Point> kSquare{{0, 0}, {1, 0}, {0, 1}, {1, 1}};
inline const std::vector<Point> kSimplex112{{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {1, 1, 2}};

inline std::vector<Point> unit_simplex(std::size_t n) {
  std::vector<Point> out{Point(n, 0)};
  for (std::size_t k = 0; k < n; ++k) {
    Point e(n, 0);
    e[k] = 1;
    out.push_back(e);
  }
  return out;
}

// Fixed test corpus: 30 polygons in [0,4]^2 and 20 polytopes in [0,3]^3.
inline const std::vector<toricsyz::LatticePolytope>& corpus() {
  static const auto all = [] {
    auto out = toricsyz::generate_corpus(2024, 30, 2, 4);
    for (auto& p : toricsyz::generate_corpus(2025, 20, 3, 3)) out.push_back(std::move(p));
    return out;
  }();
  return all;
}

// x -> A x + t with A unimodular.
inline toricsyz::LatticePolytope transform(const toricsyz::LatticePolytope& P, const std::vector<Point>& A,
                                           const Point& t) {
  std::vector<Point> out;
  for (const auto& v : verts(P)) {
    Point w(t);
    for (std::size_t r = 0; r < A.size(); ++r)
      for (std::size_t c = 0; c < v.size(); ++c) w[r] += A[r][c] * v[c];
    out.push_back(w);
  }
  return poly(out);
}

inline std::vector<Point> unimodular(std::size_t n) {
  if (n == 2) return {{2, 1}, {1, 1}};
  return {{1, 2, 3}, {0, 1, 4}, {1, 2, 4}};  // det = 1
}

}  // namespace testing_support
