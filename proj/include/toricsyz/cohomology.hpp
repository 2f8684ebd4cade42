#pragma once

// Sheaf cohomology dimensions of line bundles computed from lattice data,
// O_X-regularity, and the syzygy prediction of the multigraded regularity
// theorem.

#include <cstddef>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "toricsyz/ehrhart.hpp"
#include "toricsyz/errors.hpp"
#include "toricsyz/integer.hpp"
#include "toricsyz/lattice.hpp"

namespace toricsyz {

/// dim H^i(X, L^d) for the ample L with polytope P. Nonnegative twists only
/// have sections; negative twists only have top cohomology, counted by the
/// interior points of (-d)P.
inline Integer coh_dim_ample_power(const LatticePolytope& poly, long d, std::size_t i) {
  const std::size_t n = poly.dim();
  if (d >= 0) return i == 0 ? Integer(static_cast<long>(count_lattice_points(poly, d))) : Integer(0);
  if (i != n) return 0;
  if (n == 0) return 1;
  return static_cast<long>(interior_lattice_points(poly, -d).size());
}

/// O_X-regularity of L^m with respect to L: H^i(L^{m-i}) = 0 for 1 <= i <= n.
inline bool is_regular_single(const LatticePolytope& poly, long m) {
  for (std::size_t i = 1; i <= poly.dim(); ++i)
    if (coh_dim_ample_power(poly, m - static_cast<long>(i), i) != 0) return false;
  return true;
}

/// dim H^i(P^n, O(a)).
inline Integer coh_dim_projective_space(std::size_t n, long a, std::size_t i) {
  const long nn = static_cast<long>(n);
  if (i == 0 && a >= 0) return binomial(a + nn, nn);
  if (i == n && a <= -nn - 1) return binomial(-a - 1, nn);
  return 0;
}

namespace detail {

// Calls f(parts) for every u in N^slots with |u| = total.
inline void for_each_composition(std::size_t total, std::size_t slots,
                                 const std::function<void(const std::vector<std::size_t>&)>& f) {
  if (slots == 0) {
    if (total == 0) f({});
    return;
  }
  std::vector<std::size_t> parts(slots, 0);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t k, std::size_t left) {
    if (k + 1 == slots) {
      parts[k] = left;
      f(parts);
      return;
    }
    for (std::size_t x = 0; x <= left; ++x) {
      parts[k] = x;
      rec(k + 1, left - x);
    }
  };
  rec(0, total);
}

inline void check_lengths(const std::vector<std::size_t>& dims, std::size_t twist_len) {
  if (dims.size() != twist_len)
    throw InputError("product has " + std::to_string(dims.size()) + " factors but the twist has " +
                     std::to_string(twist_len) + " entries");
}

}  // namespace detail

/// Künneth: dim H^i of O(a_1, ..., a_l) on P^{n_1} x ... x P^{n_l}.
inline Integer coh_dim_product(const std::vector<std::size_t>& dims, const std::vector<long>& twist,
                               std::size_t i) {
  detail::check_lengths(dims, twist.size());
  Integer total = 0;
  detail::for_each_composition(i, dims.size(), [&](const std::vector<std::size_t>& parts) {
    Integer term = 1;
    for (std::size_t k = 0; k < dims.size() && term != 0; ++k)
      term *= coh_dim_projective_space(dims[k], twist[k], parts[k]);
    total += term;
  });
  return total;
}

/// O_X-regularity of O(a) with respect to the pulled-back O(1)'s:
/// H^i(O(a - u)) = 0 for all i >= 1 and u in N^l with |u| = i.
inline bool is_regular_product(const std::vector<std::size_t>& dims, const std::vector<long>& twist) {
  detail::check_lengths(dims, twist.size());
  const std::size_t top = std::accumulate(dims.begin(), dims.end(), std::size_t{0});
  for (std::size_t i = 1; i <= top; ++i) {
    bool vanishes = true;
    detail::for_each_composition(i, dims.size(), [&](const std::vector<std::size_t>& u) {
      if (!vanishes) return;
      std::vector<long> shifted = twist;
      for (std::size_t k = 0; k < u.size(); ++k) shifted[k] -= static_cast<long>(u[k]);
      if (coh_dim_product(dims, shifted, i) != 0) vanishes = false;
    });
    if (!vanishes) return false;
  }
  return true;
}

/// dims[i] = dim H^i for one twist, with the Euler characteristic alongside.
struct CohomologyProfile {
  std::string context;  // "polytope" or "product"
  std::vector<long> twist;
  std::map<std::size_t, Integer> dims;

  Integer euler_characteristic() const {
    Integer chi = 0;
    for (const auto& [i, h] : dims) chi += i % 2 == 0 ? h : Integer(-h);
    return chi;
  }
};

inline CohomologyProfile profile_ample_power(const LatticePolytope& poly, long d) {
  CohomologyProfile out{"polytope", {d}, {}};
  for (std::size_t i = 0; i <= poly.dim(); ++i) out.dims[i] = coh_dim_ample_power(poly, d, i);
  return out;
}

inline CohomologyProfile profile_product(const std::vector<std::size_t>& dims, const std::vector<long>& twist) {
  CohomologyProfile out{"product", twist, {}};
  const std::size_t top = std::accumulate(dims.begin(), dims.end(), std::size_t{0});
  for (std::size_t i = 0; i <= top; ++i) out.dims[i] = coh_dim_product(dims, twist, i);
  return out;
}

/// Weights w_1, w_2, ... in N^l with partial sums m_i = w_1 + ... + w_i.
/// Weights past the end of the list repeat the last one.
struct MainTheoremPlan {
  std::size_t ell = 1;
  std::vector<std::vector<long>> weights;
  std::size_t p = 1;

  const std::vector<long>& weight(std::size_t i) const {
    return weights.at(std::min(i, weights.size()) - 1);
  }
  std::vector<long> partial_sum(std::size_t i) const {
    std::vector<long> m(ell, 0);
    for (std::size_t k = 1; k <= i; ++k)
      for (std::size_t t = 0; t < ell; ++t) m[t] += weight(k)[t];
    return m;
  }

  /// w_1 = first, w_i = (1, ..., 1) afterwards.
  static MainTheoremPlan with_first(std::vector<long> first, std::size_t p) {
    MainTheoremPlan plan;
    plan.ell = first.size();
    plan.weights = {std::move(first), std::vector<long>(plan.ell, 1)};
    plan.p = p;
    return plan;
  }
};

/// The semigroup hypothesis B^{w_i} ⊗ B_j^{-1} ∈ 𝓑, certified by w_i - e_j ∈ N^l
/// for all j, i.e. every coordinate of every used weight is at least 1.
inline bool membership_ok(const MainTheoremPlan& plan) {
  if (plan.weights.empty()) return false;
  for (std::size_t i = 1; i <= std::max<std::size_t>(plan.p, 1); ++i) {
    const auto& w = plan.weight(i);
    if (w.size() != plan.ell) return false;
    for (long x : w)
      if (x < 1) return false;
  }
  return true;
}

struct NpPrediction {
  std::size_t p = 0;
  std::vector<long> twist;  // m_p: B^{m_p} satisfies (N_p)
};

/// If B^{m_1} is O_X-regular and the weights satisfy the semigroup hypothesis,
/// B^{m_p} satisfies (N_p). The implication is one-way: no prediction is not a
/// failure.
inline std::optional<NpPrediction> predict_np_main(const MainTheoremPlan& plan, bool regular_m1,
                                                   bool membership) {
  if (!regular_m1 || !membership || plan.p < 1) return std::nullopt;
  return NpPrediction{plan.p, plan.partial_sum(plan.p)};
}

/// l = 1, B_1 = L: predicts L^{m_p} satisfies (N_p) with w_1 = first, w_i = 1.
inline std::optional<NpPrediction> predict_single(const LatticePolytope& poly, long first, std::size_t p) {
  const auto plan = MainTheoremPlan::with_first({first}, p);
  return predict_np_main(plan, is_regular_single(poly, plan.partial_sum(1)[0]), membership_ok(plan));
}

inline std::optional<NpPrediction> predict_product(const std::vector<std::size_t>& dims,
                                                   std::vector<long> first, std::size_t p) {
  detail::check_lengths(dims, first.size());
  const auto plan = MainTheoremPlan::with_first(std::move(first), p);
  return predict_np_main(plan, is_regular_product(dims, plan.partial_sum(1)), membership_ok(plan));
}

}  // namespace toricsyz
