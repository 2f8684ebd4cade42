#pragma once

#include <cstddef>
#include <set>
#include <string>
#include <vector>

#include "toricsyz/errors.hpp"
#include "toricsyz/integer.hpp"
#include "toricsyz/lattice.hpp"

namespace toricsyz {

/// Ehrhart (= Hilbert) polynomial h(d) = #(dP ∩ Z^n), coefficients lowest
/// degree first.
class EhrhartPolynomial {
 public:
  EhrhartPolynomial() = default;
  explicit EhrhartPolynomial(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) {
    while (coeffs_.size() > 1 && coeffs_.back() == 0) coeffs_.pop_back();
    if (coeffs_.empty()) coeffs_.emplace_back(0);
  }

  const std::vector<Rational>& coeffs() const { return coeffs_; }
  std::size_t degree() const { return coeffs_.size() - 1; }
  const Rational& leading() const { return coeffs_.back(); }

  Rational operator()(const Integer& d) const {
    Rational acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * d + *it;
    return acc;
  }
  Rational operator()(long d) const { return (*this)(Integer(d)); }

  friend bool operator==(const EhrhartPolynomial& a, const EhrhartPolynomial& b) {
    return a.coeffs_ == b.coeffs_;
  }

  std::string to_string() const {
    std::string s;
    for (std::size_t k = coeffs_.size(); k-- > 0;) {
      if (coeffs_[k] == 0 && coeffs_.size() > 1) continue;
      if (!s.empty()) s += coeffs_[k] < 0 ? " - " : " + ";
      else if (coeffs_[k] < 0) s += "-";
      Rational a = abs(coeffs_[k]);
      if (k == 0 || a != 1) s += a.get_str() + (k >= 1 ? " " : "");
      if (k >= 1) s += "d";
      if (k >= 2) s += "^" + std::to_string(k);
    }
    return s;
  }

 private:
  std::vector<Rational> coeffs_{Rational(1)};
};

/// Interpolates through the exact counts at d = 0..dim P using the Newton
/// basis binomial(d, k) and expands to monomials.
inline EhrhartPolynomial ehrhart_polynomial(const LatticePolytope& poly) {
  const std::size_t n = poly.dim();
  std::vector<Rational> diffs;
  for (std::size_t d = 0; d <= n; ++d) diffs.emplace_back(count_lattice_points(poly, d));
  // forward differences: diffs[k] becomes Δ^k h(0)
  for (std::size_t k = 1; k <= n; ++k)
    for (std::size_t i = n; i >= k; --i) diffs[i] -= diffs[i - 1];

  std::vector<Rational> coeffs(n + 1, Rational(0));
  std::vector<Rational> falling{Rational(1)};  // d(d-1)...(d-k+1)
  Rational factorial = 1;
  for (std::size_t k = 0; k <= n; ++k) {
    if (k > 0) {
      std::vector<Rational> next(falling.size() + 1, Rational(0));
      for (std::size_t e = 0; e < falling.size(); ++e) {
        next[e + 1] += falling[e];
        next[e] -= falling[e] * static_cast<long>(k - 1);
      }
      falling = std::move(next);
      factorial *= static_cast<long>(k);
    }
    for (std::size_t e = 0; e < falling.size(); ++e) coeffs[e] += diffs[k] * falling[e] / factorial;
  }
  for (auto& c : coeffs) c.canonicalize();
  return EhrhartPolynomial(std::move(coeffs));
}

struct RootData {
  std::size_t r = 0;
  std::vector<Integer> integer_roots;  // -1, -2, ..., -r
};

/// Counts distinct integer roots. Candidates are the divisors of the constant
/// term of the cleared-denominator polynomial; the result is cross-checked
/// against the consecutive-run definition max{s : h(-1) = ... = h(-s) = 0}.
inline RootData integer_root_count(const EhrhartPolynomial& h) {
  Integer lcm_den = 1;
  for (const auto& c : h.coeffs()) lcm_den = lcm(lcm_den, Integer(c.get_den()));
  const Integer constant = abs(Integer(h.coeffs().front() * lcm_den));

  std::set<Integer> roots;
  if (constant == 0) {
    roots.insert(0);  // not an Ehrhart polynomial, but keep the count honest
  } else {
    for (Integer q = 1; q * q <= constant; ++q) {
      if (constant % q != 0) continue;
      for (const Integer& cand : {Integer(q), Integer(constant / q)})
        for (const Integer& s : {Integer(cand), Integer(-cand)})
          if (h(s) == 0) roots.insert(s);
    }
  }

  RootData out;
  while (h(-static_cast<long>(out.r) - 1) == 0 && out.r <= h.degree()) ++out.r;
  for (std::size_t k = 1; k <= out.r; ++k) out.integer_roots.emplace_back(-static_cast<long>(k));
  if (roots.size() != out.r || !std::equal(out.integer_roots.rbegin(), out.integer_roots.rend(),
                                           roots.begin()))
    throw ConsistencyError("integer roots of " + h.to_string() + " are not {-1, ..., -r}");
  return out;
}

/// Largest r with no interior lattice point in rP, by direct search.
inline std::size_t r_of_polytope(const LatticePolytope& poly) {
  if (poly.dim() == 0) throw InputError("r(P) needs dim P >= 1");
  std::size_t r = 0;
  while (interior_lattice_points(poly, static_cast<long>(r + 1)).empty()) {
    ++r;
    if (r > poly.dim()) throw ConsistencyError("r(P) exceeds dim P");
  }
  return r;
}

/// Checks (-1)^n h(-d) = #interior(dP) for 1 <= d <= dmax.
inline bool reciprocity_check(const LatticePolytope& poly, std::size_t dmax) {
  if (poly.dim() == 0) throw InputError("reciprocity needs dim P >= 1");
  const auto h = ehrhart_polynomial(poly);
  const int sign = poly.dim() % 2 == 0 ? 1 : -1;
  for (std::size_t d = 1; d <= dmax; ++d) {
    const Rational lhs = sign * h(-static_cast<long>(d));
    if (lhs != static_cast<long>(interior_lattice_points(poly, static_cast<long>(d)).size()))
      return false;
  }
  return true;
}

/// r(P) = r(L); both routes are compared in debug builds.
inline std::size_t r_invariant(const LatticePolytope& poly) {
  const std::size_t r = integer_root_count(ehrhart_polynomial(poly)).r;
#ifndef NDEBUG
  if (poly.dim() > 0 && r != r_of_polytope(poly))
    throw ConsistencyError("root count and interior search disagree on r(P)");
#endif
  return r;
}

}  // namespace toricsyz
