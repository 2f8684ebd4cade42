#pragma once

// Sufficient conditions for (N_p) as auditable certificates. A criterion that
// does not apply says nothing about (N_p); it never reports a failure.

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "toricsyz/cohomology.hpp"
#include "toricsyz/ehrhart.hpp"
#include "toricsyz/koszul.hpp"
#include "toricsyz/lattice.hpp"
#include "toricsyz/semigroup.hpp"

namespace toricsyz {

struct CriterionResult {
  std::string criterion;
  nlohmann::json inputs;
  std::optional<std::size_t> guaranteed_p;
  std::optional<long> threshold;
  // cor_polytope only
  bool vacuous = false;
  std::optional<std::size_t> dilation;
  std::optional<bool> cross_check_normal;

  bool guaranteed() const { return guaranteed_p.has_value(); }
};

/// L^d satisfies (N_p) whenever d >= n - 1 + p.
inline CriterionResult cor1(std::size_t n, std::size_t d, std::size_t p) {
  CriterionResult out;
  out.criterion = "cor1";
  out.inputs = {{"n", n}, {"d", d}, {"p", p}};
  out.threshold = static_cast<long>(n + p) - 1;
  if (static_cast<long>(d) >= *out.threshold) out.guaranteed_p = p;
  return out;
}

/// L^d satisfies (N_p), p >= 1, whenever d >= max(deg h - r + p - 1, p).
/// p = 0 is answered by cor1.
inline CriterionResult cor_hilbert(const LatticePolytope& poly, std::size_t d, std::size_t p) {
  if (p == 0) return cor1(poly.dim(), d, 0);
  const auto h = ehrhart_polynomial(poly);
  const std::size_t r = integer_root_count(h).r;
  CriterionResult out;
  out.criterion = "cor_hilbert";
  out.inputs = {{"n", poly.dim()}, {"d", d}, {"p", p}, {"deg_h", h.degree()}, {"r", r}};
  out.threshold = std::max(static_cast<long>(h.degree()) - static_cast<long>(r) + static_cast<long>(p) - 1,
                           static_cast<long>(p));
  if (static_cast<long>(d) >= *out.threshold) out.guaranteed_p = p;
  return out;
}

/// (n - r(P)) P is normal. With r(P) = n the statement concerns 0*P and is
/// vacuous; the report then checks max(n - r, 1) * P directly instead.
inline CriterionResult cor_polytope(const LatticePolytope& poly, bool cross_check = true) {
  const std::size_t n = poly.dim();
  const std::size_t r = r_invariant(poly);
  CriterionResult out;
  out.criterion = "cor_polytope";
  out.inputs = {{"n", n}, {"r", r}};
  out.threshold = static_cast<long>(n) - static_cast<long>(r);
  out.dilation = std::max<std::size_t>(n - r, 1);
  if (n == r) out.vacuous = true;
  else out.guaranteed_p = 0;
  if (cross_check) out.cross_check_normal = is_normal(dilate(poly, static_cast<long>(*out.dilation))).normal;
  return out;
}

/// O(d_1, ..., d_l) on P^{n_1} x ... x P^{n_l} satisfies (N_p) for
/// p <= min{d_i : d_i != 0}.
inline CriterionResult cor_prodproj(const std::vector<std::size_t>& dims, const std::vector<std::size_t>& degrees,
                                    std::size_t p) {
  if (dims.size() != degrees.size()) throw InputError("cor_prodproj: length mismatch");
  CriterionResult out;
  out.criterion = "cor_prodproj";
  out.inputs = {{"n", dims}, {"d", degrees}, {"p", p}};
  std::optional<std::size_t> least;
  for (auto d : degrees)
    if (d != 0) least = least ? std::min(*least, d) : d;
  if (!least) return out;  // trivial bundle: no statement
  out.threshold = static_cast<long>(*least);
  if (p <= *least) out.guaranteed_p = p;
  return out;
}

/// Adjoint bundles on products of projective spaces, K_X = O(-n_1-1, ...),
/// unit weights: K_X ⊗ B^{m_k} with k = N + p (k = n + 1 + p on P^n), so
/// O(m) is covered once m_i >= k - n_i - 1 for every factor.
inline CriterionResult cor_canonical_product(const std::vector<std::size_t>& dims, const std::vector<long>& twist,
                                             std::size_t p) {
  if (dims.empty() || dims.size() != twist.size()) throw InputError("cor_canonical_product: length mismatch");
  CriterionResult out;
  out.criterion = "cor_canonical_product";
  out.inputs = {{"n", dims}, {"m", twist}, {"p", p}};
  const long total = std::accumulate(dims.begin(), dims.end(), 0L);
  const long steps = dims.size() == 1 ? total + 1 + static_cast<long>(p) : total + static_cast<long>(p);
  out.threshold = steps;
  std::vector<long> needed;
  bool ok = p >= 1;
  for (std::size_t k = 0; k < dims.size(); ++k) {
    needed.push_back(steps - static_cast<long>(dims[k]) - 1);
    if (twist[k] < needed.back()) ok = false;
  }
  out.inputs["needed_twist"] = needed;
  if (ok) out.guaranteed_p = p;
  return out;
}

/// Every polytope criterion that speaks about L^d and (N_p).
inline std::vector<CriterionResult> polytope_criteria(const LatticePolytope& poly, std::size_t d, std::size_t p) {
  std::vector<CriterionResult> out;
  out.push_back(cor1(poly.dim(), d, p));
  if (p >= 1) out.push_back(cor_hilbert(poly, d, p));
  if (p == 0 && poly.dim() >= 1) {
    auto cp = cor_polytope(poly, false);
    // the corollary speaks about the single dilation n - r(P)
    if (!cp.vacuous && *cp.dilation != d) cp.guaranteed_p.reset();
    cp.inputs["d"] = d;
    out.push_back(std::move(cp));
  }
  return out;
}

struct SoundnessConflict {
  std::string criterion;
  std::size_t d = 0, p = 0;
  BettiCertificate certificate;
};

/// Runs the criteria for L^d and compares them with Koszul verdicts. Returns
/// every instance where a criterion guarantees (N_p) but the computation
/// finds a failure at level <= p.
inline std::vector<SoundnessConflict> soundness_conflicts(const LatticePolytope& poly, std::size_t d,
                                                          const std::vector<NpVerdict>& verdicts) {
  std::vector<SoundnessConflict> out;
  for (const auto& v : verdicts) {
    for (const auto& c : polytope_criteria(poly, d, v.p)) {
      if (!c.guaranteed()) continue;
      if (v.fails()) out.push_back({c.criterion, d, v.p, *v.certificate});
    }
  }
  return out;
}

/// Upgrades VERIFIED_UP_TO verdicts covered by a criterion to PROVEN. A
/// criterion guaranteeing a level the computation refutes is a consistency
/// error.
inline std::vector<NpVerdict> annotate_with_criteria(const LatticePolytope& poly, std::size_t d,
                                                     std::vector<NpVerdict> verdicts) {
  if (auto conflicts = soundness_conflicts(poly, d, verdicts); !conflicts.empty())
    throw ConsistencyError(conflicts.front().criterion + " guarantees (N_" + std::to_string(conflicts.front().p) +
                           ") but the Koszul computation refutes it");
  for (auto& v : verdicts) {
    if (v.fails()) continue;
    for (const auto& c : polytope_criteria(poly, d, v.p)) {
      if (!c.guaranteed()) continue;
      v.status = NpStatus::Proven;
      v.criterion = c.criterion;
      break;
    }
  }
  return verdicts;
}

}  // namespace toricsyz
