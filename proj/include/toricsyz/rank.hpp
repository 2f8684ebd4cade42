#pragma once

// Rank of sparse integer matrices, exactly over Q or modulo a word-size prime.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <random>
#include <unordered_map>
#include <utility>
#include <vector>

#include "toricsyz/integer.hpp"

namespace toricsyz {

/// Sparse vector: (index, value) pairs sorted by index, no zero values.
template <class T>
using SparseVector = std::vector<std::pair<std::uint32_t, T>>;

/// Column-major sparse matrix with small integer entries.
struct SparseMatrix {
  std::size_t rows = 0;
  std::vector<SparseVector<std::int64_t>> columns;

  std::size_t cols() const { return columns.size(); }
  std::size_t nonzeros() const {
    std::size_t n = 0;
    for (const auto& c : columns) n += c.size();
    return n;
  }
};

/// Prime field Z/p for p < 2^63.
struct PrimeField {
  using value_type = std::uint64_t;
  std::uint64_t p;

  value_type from(std::int64_t x) const {
    const auto m = static_cast<std::int64_t>(x % static_cast<std::int64_t>(p));
    return static_cast<value_type>(m < 0 ? m + static_cast<std::int64_t>(p) : m);
  }
  bool is_zero(value_type a) const { return a == 0; }
  value_type sub(value_type a, value_type b) const { return a >= b ? a - b : a + (p - b); }
  value_type mul(value_type a, value_type b) const {
    return static_cast<value_type>(static_cast<unsigned __int128>(a) * b % p);
  }
  value_type inv(value_type a) const {
    value_type result = 1, base = a;
    for (std::uint64_t e = p - 2; e; e >>= 1) {
      if (e & 1) result = mul(result, base);
      base = mul(base, base);
    }
    return result;
  }
};

struct RationalField {
  using value_type = Rational;
  value_type from(std::int64_t x) const { return Rational(static_cast<long>(x)); }
  bool is_zero(const value_type& a) const { return a == 0; }
  value_type sub(const value_type& a, const value_type& b) const { return a - b; }
  value_type mul(const value_type& a, const value_type& b) const { return a * b; }
  value_type inv(const value_type& a) const { return 1 / a; }
};

/// Rank by reducing each column against the pivots found so far; each pivot
/// vector is stored with leading coefficient 1.
template <class Field>
std::size_t sparse_rank(const SparseMatrix& m, const Field& field) {
  using V = typename Field::value_type;
  std::unordered_map<std::uint32_t, SparseVector<V>> pivots;
  pivots.reserve(std::min(m.rows, m.cols()));

  std::vector<std::size_t> order(m.cols());
  for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return m.columns[a].size() < m.columns[b].size();
  });

  SparseVector<V> work, scratch;
  for (std::size_t k : order) {
    if (pivots.size() == m.rows) break;  // full row rank
    work.clear();
    for (const auto& [row, value] : m.columns[k]) {
      V v = field.from(value);
      if (!field.is_zero(v)) work.emplace_back(row, std::move(v));
    }
    while (!work.empty()) {
      auto it = pivots.find(work.front().first);
      if (it == pivots.end()) {
        const V lead_inv = field.inv(work.front().second);
        for (auto& e : work) e.second = field.mul(e.second, lead_inv);
        pivots.emplace(work.front().first, work);
        break;
      }
      // work -= work.lead * pivot
      const V factor = work.front().second;
      const auto& piv = it->second;
      scratch.clear();
      std::size_t a = 0, b = 0;
      while (a < work.size() || b < piv.size()) {
        if (b == piv.size() || (a < work.size() && work[a].first < piv[b].first)) {
          scratch.push_back(std::move(work[a++]));
        } else if (a == work.size() || piv[b].first < work[a].first) {
          V v = field.sub(field.from(0), field.mul(factor, piv[b].second));
          scratch.emplace_back(piv[b].first, std::move(v));
          ++b;
        } else {
          V v = field.sub(work[a].second, field.mul(factor, piv[b].second));
          if (!field.is_zero(v)) scratch.emplace_back(work[a].first, std::move(v));
          ++a;
          ++b;
        }
      }
      std::swap(work, scratch);
    }
  }
  return pivots.size();
}

inline std::size_t exact_rank(const SparseMatrix& m) { return sparse_rank(m, RationalField{}); }

inline std::size_t modular_rank(const SparseMatrix& m, std::uint64_t prime) {
  return sparse_rank(m, PrimeField{prime});
}

namespace detail {

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1;
  for (; e; e >>= 1) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
  }
  return r;
}

}  // namespace detail

/// Deterministic Miller-Rabin for 64-bit integers.
inline bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37})
    if (n % p == 0) return n == p;
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    std::uint64_t x = detail::powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = detail::mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

/// A pseudo-random prime in [2^61, 2^62), reproducible from the seed.
inline std::uint64_t random_prime(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  while (true) {
    const std::uint64_t candidate = (rng() >> 3) | (std::uint64_t{1} << 61) | 1;
    if (is_prime_u64(candidate)) return candidate;
  }
}

/// Exact product A*B of sparse matrices, reported only as "is it zero".
inline bool product_is_zero(const SparseMatrix& a, const SparseMatrix& b) {
  std::vector<std::int64_t> acc(a.rows, 0);
  std::vector<std::uint32_t> touched;
  for (const auto& col : b.columns) {
    touched.clear();
    for (const auto& [k, bk] : col)
      for (const auto& [i, aik] : a.columns[k]) {
        if (acc[i] == 0) touched.push_back(i);
        acc[i] += aik * bk;
      }
    bool zero = true;
    for (auto i : touched) {
      if (acc[i] != 0) zero = false;
      acc[i] = 0;
    }
    if (!zero) return false;
  }
  return true;
}

}  // namespace toricsyz
