#pragma once

// Normality (integer decomposition property) of lattice polytopes.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <unordered_set>
#include <utility>
#include <vector>

#include "toricsyz/errors.hpp"
#include "toricsyz/lattice.hpp"

namespace toricsyz {

struct NormalityWitness {
  LatticePoint point;  // lies in m*P but is no sum of m lattice points of P
  std::size_t m = 0;
  friend bool operator==(const NormalityWitness&, const NormalityWitness&) = default;
};

struct NormalityReport {
  bool normal = true;
  std::size_t checked_up_to = 1;
  std::optional<NormalityWitness> witness;
};

using PointSet = std::unordered_set<LatticePoint, LatticePointHash>;

/// Default bound: points of mP for m >= n already split off a point of P once
/// (m-1)P is reached, so m <= n-1 suffices; at least 2 is always checked.
inline std::size_t default_normality_bound(const LatticePolytope& poly) {
  return std::max<std::size_t>(poly.dim() > 0 ? poly.dim() - 1 : 0, 2);
}

/// Tests every lattice point of mP, 2 <= m <= mmax, against the m-fold sumset
/// of the lattice points of P. The witness is the lexicographically smallest
/// failing point at the smallest failing m.
inline NormalityReport is_normal(const LatticePolytope& poly,
                                 std::optional<std::size_t> mmax = std::nullopt) {
  NormalityReport report;
  const std::size_t bound = mmax.value_or(default_normality_bound(poly));
  report.checked_up_to = std::max<std::size_t>(bound, 1);
  if (poly.dim() == 0) return report;

  const auto generators = lattice_points(poly, 1);
  PointSet sumset(generators.begin(), generators.end());
  for (std::size_t m = 2; m <= bound; ++m) {
    PointSet next;
    next.reserve(sumset.size() * 2);
    for (const auto& s : sumset)
      for (const auto& g : generators) next.insert(s + g);
    sumset = std::move(next);
    for (const auto& x : lattice_points(poly, static_cast<long>(m))) {
      if (!sumset.count(x)) {
        report.normal = false;
        report.checked_up_to = m;
        report.witness = NormalityWitness{x, m};
        return report;
      }
    }
  }
  return report;
}

namespace detail {

inline bool decompose_from(const LatticePolytope& poly, const std::vector<LatticePoint>& gens,
                           std::size_t first, const LatticePoint& rest, std::size_t m,
                           std::vector<LatticePoint>& chosen) {
  if (m == 0) return std::all_of(rest.coords.begin(), rest.coords.end(),
                                 [](const Integer& c) { return c == 0; });
  for (std::size_t k = first; k < gens.size(); ++k) {
    LatticePoint remaining = rest - gens[k];
    if (!contains(poly, static_cast<long>(m - 1), remaining)) continue;
    chosen.push_back(gens[k]);
    if (decompose_from(poly, gens, k, remaining, m - 1, chosen)) return true;
    chosen.pop_back();
  }
  return false;
}

}  // namespace detail

/// Finds x = p_1 + ... + p_m with p_i lattice points of P (nondecreasing in
/// lexicographic order), or nothing if no decomposition exists.
inline std::optional<std::vector<LatticePoint>> decompose(const LatticePolytope& poly,
                                                          const LatticePoint& x, std::size_t m) {
  if (!contains(poly, static_cast<long>(m), x))
    throw InputError("decompose: " + x.to_string() + " is not in " + std::to_string(m) + "P");
  const auto gens = lattice_points(poly, 1);
  std::vector<LatticePoint> chosen;
  if (detail::decompose_from(poly, gens, 0, x, m, chosen)) return chosen;
  return std::nullopt;
}

}  // namespace toricsyz
