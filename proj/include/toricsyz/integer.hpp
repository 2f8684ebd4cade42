#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <limits>
#include <string>
#include <string_view>

#include "toricsyz/errors.hpp"

namespace toricsyz {

using Integer = mpz_class;
using Rational = mpq_class;

inline std::string to_string(const Integer& x) { return x.get_str(); }

// Canonical form: "3/2", "-1", "0".
inline std::string to_string(const Rational& q) { return q.get_str(); }

inline Rational parse_rational(std::string_view text) {
  Rational q;
  if (q.set_str(std::string(text), 10) != 0)
    throw InputError("not an exact rational: '" + std::string(text) + "'");
  q.canonicalize();
  return q;
}

inline std::int64_t to_int64(const Integer& x) {
  if (!mpz_fits_slong_p(x.get_mpz_t()))
    throw WindowError("integer " + x.get_str() + " exceeds the 64-bit working range");
  return static_cast<std::int64_t>(x.get_si());
}

/// binomial(n, k) with binomial(n, k) = 0 whenever k < 0 or k > n (n >= 0).
inline Integer binomial(long n, long k) {
  if (n < 0 || k < 0 || k > n) return 0;
  Integer out;
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return out;
}

inline std::size_t hash_integer(const Integer& x) {
  // Desk-scale coordinates fit a machine word; fall back to the decimal string otherwise.
  if (mpz_fits_slong_p(x.get_mpz_t())) return std::hash<long>{}(x.get_si());
  return std::hash<std::string>{}(x.get_str());
}

inline void hash_combine(std::size_t& seed, std::size_t value) {
  seed ^= value + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
}

}  // namespace toricsyz
