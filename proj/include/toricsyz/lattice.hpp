#pragma once

// Lattice polytopes in V- and H-representation, dilations, and lattice point
// enumeration. All arithmetic is exact.

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "toricsyz/errors.hpp"
#include "toricsyz/integer.hpp"
#include "toricsyz/linalg.hpp"

namespace toricsyz {

struct LatticePoint {
  std::vector<Integer> coords;

  LatticePoint() = default;
  explicit LatticePoint(std::vector<Integer> c) : coords(std::move(c)) {}
  LatticePoint(std::initializer_list<long> c) {
    coords.reserve(c.size());
    for (long x : c) coords.emplace_back(x);
  }
  static LatticePoint zero(std::size_t n) { return LatticePoint(std::vector<Integer>(n, 0)); }

  std::size_t size() const { return coords.size(); }
  const Integer& operator[](std::size_t i) const { return coords[i]; }
  Integer& operator[](std::size_t i) { return coords[i]; }

  LatticePoint& operator+=(const LatticePoint& o) {
    for (std::size_t i = 0; i < coords.size(); ++i) coords[i] += o.coords[i];
    return *this;
  }
  LatticePoint& operator-=(const LatticePoint& o) {
    for (std::size_t i = 0; i < coords.size(); ++i) coords[i] -= o.coords[i];
    return *this;
  }
  friend LatticePoint operator+(LatticePoint a, const LatticePoint& b) { return a += b; }
  friend LatticePoint operator-(LatticePoint a, const LatticePoint& b) { return a -= b; }
  friend LatticePoint operator*(const Integer& k, LatticePoint a) {
    for (auto& x : a.coords) x *= k;
    return a;
  }

  friend bool operator==(const LatticePoint& a, const LatticePoint& b) { return a.coords == b.coords; }
  friend bool operator<(const LatticePoint& a, const LatticePoint& b) {
    return std::lexicographical_compare(a.coords.begin(), a.coords.end(), b.coords.begin(),
                                        b.coords.end());
  }

  std::string to_string() const {
    std::string s = "(";
    for (std::size_t i = 0; i < coords.size(); ++i) {
      if (i) s += ",";
      s += coords[i].get_str();
    }
    return s + ")";
  }
};

struct LatticePointHash {
  std::size_t operator()(const LatticePoint& p) const {
    std::size_t seed = p.size();
    for (const auto& x : p.coords) hash_combine(seed, hash_integer(x));
    return seed;
  }
};

inline Integer dot(const std::vector<Integer>& a, const LatticePoint& x) {
  Integer s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * x.coords[i];
  return s;
}

/// The closed half-space {x : <normal, x> >= offset}.
struct HalfSpace {
  std::vector<Integer> normal;
  Integer offset;

  /// Membership in the half-space of the d-th dilation.
  bool contains(const LatticePoint& x, const Integer& d) const { return dot(normal, x) >= d * offset; }
  bool strictly_contains(const LatticePoint& x, const Integer& d) const {
    return dot(normal, x) > d * offset;
  }

  friend bool operator==(const HalfSpace&, const HalfSpace&) = default;
  friend bool operator<(const HalfSpace& a, const HalfSpace& b) {
    if (a.normal != b.normal)
      return std::lexicographical_compare(a.normal.begin(), a.normal.end(), b.normal.begin(),
                                          b.normal.end());
    return a.offset < b.offset;
  }
};

/// Affine lattice map from normalized coordinates back to the input lattice:
/// x = origin + sum_k y_k * basis[k].
struct AffineEmbedding {
  LatticePoint origin;
  std::vector<LatticePoint> basis;

  LatticePoint lift(const LatticePoint& y, const Integer& d = 1) const {
    LatticePoint x = d * origin;
    for (std::size_t k = 0; k < basis.size(); ++k) x += y[k] * basis[k];
    return x;
  }
};

class LatticePolytope;
LatticePolytope normalize_full_dim(std::vector<LatticePoint> points);

/// A full-dimensional lattice polytope. Only normalize_full_dim constructs one,
/// so vertices and facets are always consistent.
class LatticePolytope {
 public:
  const std::vector<LatticePoint>& vertices() const { return vertices_; }
  const std::vector<HalfSpace>& facets() const { return facets_; }
  std::size_t ambient_dim() const { return ambient_dim_; }
  std::size_t dim() const { return dim_; }
  /// Present when the input was lower-dimensional and had to be re-embedded.
  const std::optional<AffineEmbedding>& embedding() const { return embedding_; }

  friend bool operator==(const LatticePolytope& a, const LatticePolytope& b) {
    return a.vertices_ == b.vertices_ && a.facets_ == b.facets_;
  }

 private:
  friend LatticePolytope normalize_full_dim(std::vector<LatticePoint> points);
  std::vector<LatticePoint> vertices_;
  std::vector<HalfSpace> facets_;
  std::size_t ambient_dim_ = 0;
  std::size_t dim_ = 0;
  std::optional<AffineEmbedding> embedding_;
};

namespace detail {

inline void check_same_length(const std::vector<LatticePoint>& pts) {
  if (pts.empty()) throw InputError("vertex list is empty");
  const auto n = pts.front().size();
  for (const auto& p : pts)
    if (p.size() != n) throw InputError("vertices have inconsistent dimensions");
}

inline std::size_t affine_rank(const std::vector<LatticePoint>& pts) {
  IntegerMatrix diffs;
  for (std::size_t k = 1; k < pts.size(); ++k) diffs.push_back((pts[k] - pts[0]).coords);
  return rank(std::move(diffs));
}

inline void sort_unique(std::vector<LatticePoint>& pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
}

// Calls f(indices) for every k-subset of {0..n-1} in lexicographic order.
template <class F>
void for_each_subset(std::size_t n, std::size_t k, F&& f) {
  if (k > n) return;
  std::vector<std::size_t> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    f(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace detail

/// Irredundant H-representation of conv(points). The points must affinely span
/// their ambient space; small inputs only (hyperplanes are found by trying
/// every n-subset).
inline std::vector<HalfSpace> convex_hull_facets(std::vector<LatticePoint> points) {
  detail::check_same_length(points);
  detail::sort_unique(points);
  const std::size_t n = points.front().size();
  if (n == 0) return {};
  if (detail::affine_rank(points) != n)
    throw InputError("convex_hull_facets: vertices are not full-dimensional");

  std::set<HalfSpace> found;
  detail::for_each_subset(points.size(), n, [&](const std::vector<std::size_t>& idx) {
    // normal_t = (-1)^t det(M without column t), M rows = p_k - p_0
    IntegerMatrix m;
    for (std::size_t k = 1; k < n; ++k) m.push_back((points[idx[k]] - points[idx[0]]).coords);
    std::vector<Integer> normal(n);
    bool nonzero = false;
    for (std::size_t t = 0; t < n; ++t) {
      IntegerMatrix minor;
      for (const auto& row : m) {
        std::vector<Integer> r;
        for (std::size_t c = 0; c < n; ++c)
          if (c != t) r.push_back(row[c]);
        minor.push_back(std::move(r));
      }
      normal[t] = determinant(std::move(minor));
      if (t % 2 == 1) normal[t] = -normal[t];
      if (normal[t] != 0) nonzero = true;
    }
    if (!nonzero) return;
    Integer g = 0;
    for (const auto& x : normal) g = gcd(g, x);
    for (auto& x : normal) x /= g;

    Integer offset = dot(normal, points[idx[0]]);
    bool above = false, below = false;
    for (const auto& p : points) {
      Integer v = dot(normal, p);
      if (v > offset) above = true;
      if (v < offset) below = true;
      if (above && below) return;
    }
    if (below) {
      for (auto& x : normal) x = -x;
      offset = -offset;
    }
    found.insert(HalfSpace{std::move(normal), std::move(offset)});
  });
  return {found.begin(), found.end()};
}

/// Re-embeds conv(points) so that its affine lattice span becomes the full
/// ambient lattice. Full-dimensional input keeps its coordinates; otherwise
/// the first sorted point moves to the origin and a unimodular change of
/// coordinates identifies the saturated difference lattice with Z^dim.
inline LatticePolytope normalize_full_dim(std::vector<LatticePoint> points) {
  detail::check_same_length(points);
  detail::sort_unique(points);
  const std::size_t ambient = points.front().size();

  LatticePolytope poly;
  IntegerMatrix diffs;
  for (std::size_t k = 1; k < points.size(); ++k) diffs.push_back((points[k] - points[0]).coords);
  ColumnEchelon ech = column_echelon(diffs, ambient);
  const std::size_t r = ech.rank;

  std::vector<LatticePoint> local;
  if (r == ambient) {
    local = points;
  } else {
    AffineEmbedding emb;
    emb.origin = points[0];
    for (std::size_t k = 0; k < r; ++k) emb.basis.emplace_back(ech.inverse[k]);
    for (const auto& p : points) {
      const LatticePoint shifted = p - points[0];
      LatticePoint y = LatticePoint::zero(r);
      for (std::size_t t = 0; t < r; ++t)
        for (std::size_t s = 0; s < ambient; ++s) y[t] += shifted[s] * ech.transform[s][t];
      local.push_back(std::move(y));
    }
    detail::sort_unique(local);
    poly.embedding_ = std::move(emb);
  }
  poly.ambient_dim_ = r;
  poly.dim_ = r;
  poly.facets_ = convex_hull_facets(local);

  // A point is a vertex iff the normals of the facets tight at it have full rank.
  for (const auto& p : local) {
    IntegerMatrix tight;
    for (const auto& f : poly.facets_)
      if (dot(f.normal, p) == f.offset) tight.push_back(f.normal);
    if (rank(std::move(tight)) == r) poly.vertices_.push_back(p);
  }
  return poly;
}

/// The polytope k*P.
inline LatticePolytope dilate(const LatticePolytope& poly, const Integer& k) {
  std::vector<LatticePoint> pts;
  for (const auto& v : poly.vertices()) pts.push_back(k * v);
  return normalize_full_dim(std::move(pts));
}

namespace detail {

// Enumerates integer points of the bounding box of d*P in lexicographic order
// and keeps those accepted by `keep`.
template <class Keep>
std::vector<LatticePoint> scan_box(const LatticePolytope& poly, const Integer& d, Keep&& keep) {
  const std::size_t n = poly.ambient_dim();
  std::vector<Integer> lo(n), hi(n);
  for (std::size_t t = 0; t < n; ++t) {
    lo[t] = hi[t] = poly.vertices().front()[t];
    for (const auto& v : poly.vertices()) {
      if (v[t] < lo[t]) lo[t] = v[t];
      if (v[t] > hi[t]) hi[t] = v[t];
    }
    lo[t] *= d;
    hi[t] *= d;
  }
  std::vector<LatticePoint> out;
  LatticePoint x(lo);
  while (true) {
    if (keep(x)) out.push_back(x);
    std::size_t t = n;
    while (t > 0) {
      --t;
      if (x[t] < hi[t]) {
        ++x[t];
        break;
      }
      x[t] = lo[t];
      if (t == 0) return out;
    }
    if (n == 0) return out;
  }
}

}  // namespace detail

/// Membership in the closed dilation d*P.
inline bool contains(const LatticePolytope& poly, const Integer& d, const LatticePoint& x) {
  if (x.size() != poly.ambient_dim())
    throw InputError("point " + x.to_string() + " has dimension " + std::to_string(x.size()) +
                     ", polytope has " + std::to_string(poly.ambient_dim()));
  if (d == 0) {
    for (const auto& c : x.coords)
      if (c != 0) return false;
    return true;
  }
  return std::all_of(poly.facets().begin(), poly.facets().end(),
                     [&](const HalfSpace& f) { return f.contains(x, d); });
}

/// Lattice points of d*P, sorted lexicographically.
inline std::vector<LatticePoint> lattice_points(const LatticePolytope& poly, const Integer& d) {
  if (d < 0) throw InputError("dilation must be nonnegative");
  return detail::scan_box(poly, d, [&](const LatticePoint& x) {
    return std::all_of(poly.facets().begin(), poly.facets().end(),
                       [&](const HalfSpace& f) { return f.contains(x, d); });
  });
}

/// Lattice points strictly inside every facet of d*P.
inline std::vector<LatticePoint> interior_lattice_points(const LatticePolytope& poly,
                                                         const Integer& d) {
  if (poly.dim() == 0) throw InputError("interior points need dim >= 1");
  if (d < 1) throw InputError("interior points need dilation >= 1");
  return detail::scan_box(poly, d, [&](const LatticePoint& x) {
    return std::all_of(poly.facets().begin(), poly.facets().end(),
                       [&](const HalfSpace& f) { return f.strictly_contains(x, d); });
  });
}

inline std::size_t count_lattice_points(const LatticePolytope& poly, const Integer& d) {
  return lattice_points(poly, d).size();
}

}  // namespace toricsyz
