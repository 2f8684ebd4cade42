#pragma once

// Graded Betti numbers of the section ring R of a lattice polytope, computed
// as Koszul homology Tor_i(R, k)_j, and the (N_p) verdicts derived from them.
//
// The Koszul complex K(R) is Z^{n+1}-graded: e_S ⊗ r has weight
// sum_{s in S} v_s + r. The differential preserves the weight, so every strand
// splits into independent blocks, one per lattice point of j*c*P.

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <unordered_map>
#include <utility>
#include <vector>

#include "toricsyz/ehrhart.hpp"
#include "toricsyz/errors.hpp"
#include "toricsyz/lattice.hpp"
#include "toricsyz/rank.hpp"

namespace toricsyz {

/// R = ⊕_d H^0(X, L^{cd}); the degree-d piece has the lattice points of c*d*P
/// as basis. Basis points also carry a linear int64 key so that products are
/// key additions.
class GradedSectionRing {
 public:
  GradedSectionRing(LatticePolytope base, std::size_t dilation, std::size_t max_degree)
      : base_(std::move(base)), dilation_(dilation) {
    if (dilation_ < 1) throw InputError("ring dilation must be >= 1");
    if (max_degree < 1) throw InputError("ring needs max degree >= 1");
    for (std::size_t d = 0; d <= max_degree; ++d)
      bases_.push_back(lattice_points(base_, static_cast<long>(dilation_ * d)));
    init_keys();
  }

  const LatticePolytope& base_polytope() const { return base_; }
  std::size_t dilation() const { return dilation_; }
  std::size_t max_degree() const { return bases_.size() - 1; }
  std::size_t dim_V() const { return bases_[1].size(); }
  std::size_t dim(std::size_t d) const { return bases_.at(d).size(); }
  const std::vector<LatticePoint>& basis(std::size_t d) const { return bases_.at(d); }

  std::int64_t key(std::size_t d, std::size_t idx) const { return keys_[d][idx]; }
  std::optional<std::uint32_t> index_of(std::size_t d, std::int64_t key) const {
    auto it = index_[d].find(key);
    if (it == index_[d].end()) return std::nullopt;
    return it->second;
  }

 private:
  void init_keys() {
    const std::size_t n = base_.ambient_dim();
    Integer bound = 0;
    for (const auto& v : base_.vertices())
      for (const auto& c : v.coords) bound = std::max(bound, Integer(abs(c)));
    // Weights appear in total degree up to dim V + max degree.
    bound *= static_cast<long>(dilation_ * (dim_V() + max_degree() + 1));
    const Integer radix = 2 * bound + 1;
    Integer scale = 1;
    for (std::size_t t = 0; t < n; ++t) {
      radix_.push_back(to_int64(scale));
      scale *= radix;
    }
    if (scale >= Integer(1) << 62) throw WindowError("lattice too large for int64 weight keys");

    keys_.resize(bases_.size());
    index_.resize(bases_.size());
    for (std::size_t d = 0; d < bases_.size(); ++d) {
      index_[d].reserve(bases_[d].size());
      for (std::size_t k = 0; k < bases_[d].size(); ++k) {
        std::int64_t key = 0;
        for (std::size_t t = 0; t < n; ++t) key += to_int64(bases_[d][k][t]) * radix_[t];
        keys_[d].push_back(key);
        index_[d].emplace(key, static_cast<std::uint32_t>(k));
      }
    }
  }

  LatticePolytope base_;
  std::size_t dilation_;
  std::vector<std::vector<LatticePoint>> bases_;
  std::vector<std::int64_t> radix_;
  std::vector<std::vector<std::int64_t>> keys_;
  std::vector<std::unordered_map<std::int64_t, std::uint32_t>> index_;
};

inline GradedSectionRing build_ring(const LatticePolytope& poly, std::size_t c, std::size_t dmax) {
  return GradedSectionRing(poly, c, dmax);
}

struct KoszulOptions {
  std::size_t threads = 1;
  /// Force exact rational ranks on every block.
  bool certify = false;
  /// Blocks with rows*cols above this use the modular fast path unless certify.
  std::size_t exact_threshold = 4096;
  std::uint64_t prime = random_prime(0x5eedULL);
  /// Hard cap on the dimension of a single chain space ∧^i V ⊗ R_a.
  std::size_t max_chain_dim = 8000000;
};

/// One weight block of a Koszul differential.
struct WeightBlock {
  std::int64_t weight = 0;
  SparseMatrix matrix;
};

namespace detail {

// Saturating binomial table C[n][k] for n <= nmax, k <= kmax.
class BinomialTable {
 public:
  BinomialTable(std::size_t nmax, std::size_t kmax)
      : kmax_(kmax), table_((nmax + 1) * (kmax + 1), 0) {
    for (std::size_t n = 0; n <= nmax; ++n) {
      at(n, 0) = 1;
      for (std::size_t k = 1; k <= std::min(n, kmax); ++k) {
        const std::uint64_t a = at(n - 1, k - 1), b = k <= n - 1 ? at(n - 1, k) : 0;
        at(n, k) = a > UINT64_MAX - b ? UINT64_MAX : a + b;
      }
    }
  }
  std::uint64_t operator()(std::size_t n, std::size_t k) const {
    if (k > kmax_ || (n + 1) * (kmax_ + 1) > table_.size() || k > n) return 0;
    return table_[n * (kmax_ + 1) + k];
  }

 private:
  std::uint64_t& at(std::size_t n, std::size_t k) { return table_[n * (kmax_ + 1) + k]; }
  std::size_t kmax_;
  std::vector<std::uint64_t> table_;
};

}  // namespace detail

/// The strands of the Koszul complex of R with cached differential ranks.
/// d_{i,j} : ∧^i V ⊗ R_{j-i} -> ∧^{i-1} V ⊗ R_{j-i+1}.
class KoszulComplex {
 public:
  explicit KoszulComplex(const GradedSectionRing& ring, KoszulOptions options = {})
      : ring_(ring), options_(options), binom_(ring.dim_V(), ring.dim_V() + 1) {}

  const GradedSectionRing& ring() const { return ring_; }
  const KoszulOptions& options() const { return options_; }

  std::uint64_t chain_dim(std::size_t i, std::size_t j) const {
    if (j < i || i > ring_.dim_V()) return 0;
    check_degree(j - i);
    const std::uint64_t c = binom_(ring_.dim_V(), i);
    const std::uint64_t r = ring_.dim(j - i);
    if (c != 0 && r > UINT64_MAX / c) return UINT64_MAX;
    return c * r;
  }

  /// Rank of d_{i,j}; zero when either side is the zero space.
  std::size_t rank(std::size_t i, std::size_t j) {
    if (i == 0 || j < i || i > ring_.dim_V()) return 0;
    {
      std::lock_guard<std::mutex> lock(mutex_);
      auto it = ranks_.find({i, j});
      if (it != ranks_.end()) return it->second;
    }
    const auto blocks = differential(i, j);
    std::vector<std::size_t> block_ranks(blocks.size(), 0);
    parallel_for(blocks.size(), [&](std::size_t b) { block_ranks[b] = block_rank(blocks[b].matrix); });
    std::size_t total = 0;
    for (auto r : block_ranks) total += r;
    std::lock_guard<std::mutex> lock(mutex_);
    ranks_[{i, j}] = total;
    return total;
  }

  /// beta_{i,j} = dim C_{i,j} - rank d_{i,j} - rank d_{i+1,j}.
  std::size_t betti(std::size_t i, std::size_t j) {
    if (j < i || i > ring_.dim_V()) return 0;
    check_window(i, j);
    const std::uint64_t dim = chain_dim(i, j);
    const std::size_t out = rank(i, j);
    const std::size_t in = rank(i + 1, j);
    if (out + in > dim) throw ConsistencyError("rank-nullity violated in Koszul strand");
    return static_cast<std::size_t>(dim - out - in);
  }

  /// Exact check that d_{i,j} ∘ d_{i+1,j} vanishes on every weight block.
  bool d_squared_zero(std::size_t i, std::size_t j) const {
    if (i == 0 || j < i + 1 || i + 1 > ring_.dim_V()) return true;
    const auto outer = differential(i, j);
    const auto inner = differential(i + 1, j);
    std::map<std::int64_t, const SparseMatrix*> by_weight;
    for (const auto& b : outer) by_weight[b.weight] = &b.matrix;
    for (const auto& b : inner) {
      auto it = by_weight.find(b.weight);
      if (it == by_weight.end()) {
        if (b.matrix.nonzeros() != 0) return false;
        continue;
      }
      if (it->second->cols() != b.matrix.rows) return false;
      if (!product_is_zero(*it->second, b.matrix)) return false;
    }
    return true;
  }

  /// All weight blocks of d_{i,j}, sorted by weight. Columns follow the
  /// canonical order of ∧^i V ⊗ R_{j-i} inside each block, rows that of
  /// ∧^{i-1} V ⊗ R_{j-i+1}.
  std::vector<WeightBlock> differential(std::size_t i, std::size_t j) const {
    std::vector<WeightBlock> blocks;
    if (i == 0 || j < i || i > ring_.dim_V()) return blocks;
    check_degree(j - i + 1);
    const auto cols = chain_basis(i, j);
    const auto rows = chain_basis(i - 1, j);
    const std::size_t a = j - i;
    const std::size_t target_dim = ring_.dim(a + 1);
    std::vector<std::uint32_t> subset(i);

    for (const auto& [weight, ids] : cols) {
      WeightBlock block;
      block.weight = weight;
      auto row_it = rows.find(weight);
      const std::vector<std::uint64_t> empty;
      const auto& row_ids = row_it == rows.end() ? empty : row_it->second;
      block.matrix.rows = row_ids.size();
      block.matrix.columns.reserve(ids.size());
      for (const std::uint64_t id : ids) {
        const std::uint64_t srank = id / ring_.dim(a);
        const std::size_t ridx = id % ring_.dim(a);
        unrank(srank, i, subset);
        SparseVector<std::int64_t> col;
        col.reserve(i);
        for (std::size_t k = 0; k < i; ++k) {
          const auto target = ring_.index_of(a + 1, ring_.key(a, ridx) + ring_.key(1, subset[k]));
          if (!target) throw ConsistencyError("product left the section ring basis");
          std::uint64_t rest = 0;  // colex rank of subset minus its k-th element
          for (std::size_t t = 0, pos = 0; t < i; ++t) {
            if (t == k) continue;
            rest += binom_(subset[t], pos + 1);
            ++pos;
          }
          const std::uint64_t row_id = rest * target_dim + *target;
          auto hit = std::lower_bound(row_ids.begin(), row_ids.end(), row_id);
          if (hit == row_ids.end() || *hit != row_id)
            throw ConsistencyError("Koszul boundary left its weight block");
          col.emplace_back(static_cast<std::uint32_t>(hit - row_ids.begin()), k % 2 == 0 ? 1 : -1);
        }
        std::sort(col.begin(), col.end());
        block.matrix.columns.push_back(std::move(col));
      }
      blocks.push_back(std::move(block));
    }
    return blocks;
  }

  /// Element ids (colex subset rank * dim R_a + basis index) of ∧^i V ⊗ R_{j-i},
  /// grouped by weight and sorted.
  std::map<std::int64_t, std::vector<std::uint64_t>> chain_basis(std::size_t i, std::size_t j) const {
    std::map<std::int64_t, std::vector<std::uint64_t>> out;
    if (j < i || i > ring_.dim_V()) return out;
    const std::uint64_t total = chain_dim(i, j);
    if (total > options_.max_chain_dim)
      throw WindowError("Koszul chain space of dimension " + std::to_string(total) +
                        " exceeds the configured limit " + std::to_string(options_.max_chain_dim));
    const std::size_t a = j - i;
    const std::size_t n = ring_.dim_V();
    std::unordered_map<std::int64_t, std::vector<std::uint64_t>> groups;
    detail::for_each_subset(n, i, [&](const std::vector<std::size_t>& s) {
      std::int64_t sum = 0;
      std::uint64_t colex = 0;
      for (std::size_t k = 0; k < s.size(); ++k) {
        sum += ring_.key(1, s[k]);
        colex += binom_(s[k], k + 1);
      }
      for (std::size_t r = 0; r < ring_.dim(a); ++r)
        groups[sum + ring_.key(a, r)].push_back(colex * ring_.dim(a) + r);
    });
    for (auto& [w, ids] : groups) {
      std::sort(ids.begin(), ids.end());
      out.emplace(w, std::move(ids));
    }
    return out;
  }

  std::size_t block_rank(const SparseMatrix& m) const {
    if (m.cols() == 0 || m.rows == 0) return 0;
    if (options_.certify || m.rows * m.cols() <= options_.exact_threshold) return exact_rank(m);
    return modular_rank(m, options_.prime);
  }

  /// Computes the listed ranks, spreading the work over the configured threads.
  void prefetch(const std::vector<std::pair<std::size_t, std::size_t>>& strands) {
    for (const auto& [i, j] : strands) rank(i, j);
  }

  void check_window(std::size_t i, std::size_t j) const {
    if (j < i) return;
    if (j - i + 1 > ring_.max_degree())
      throw WindowError("beta_{" + std::to_string(i) + "," + std::to_string(j) +
                        "} needs R in degree " + std::to_string(j - i + 1) +
                        " but the ring stops at " + std::to_string(ring_.max_degree()));
  }

 private:
  void check_degree(std::size_t d) const {
    if (d > ring_.max_degree())
      throw WindowError("section ring degree " + std::to_string(d) + " is outside the computed range");
  }

  // Colex unranking into ascending indices.
  void unrank(std::uint64_t rank, std::size_t k, std::vector<std::uint32_t>& out) const {
    std::size_t hi = ring_.dim_V();
    for (std::size_t pos = k; pos > 0; --pos) {
      // largest s < hi with C(s, pos) <= rank
      std::size_t lo = pos - 1, top = hi;
      while (top - lo > 1) {
        const std::size_t mid = lo + (top - lo) / 2;
        if (binom_(mid, pos) <= rank) lo = mid;
        else top = mid;
      }
      out[pos - 1] = static_cast<std::uint32_t>(lo);
      rank -= binom_(lo, pos);
      hi = lo;
    }
  }

  template <class F>
  void parallel_for(std::size_t count, F&& f) const {
    const std::size_t workers = std::min(std::max<std::size_t>(options_.threads, 1), count);
    if (workers <= 1) {
      for (std::size_t k = 0; k < count; ++k) f(k);
      return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (std::size_t k = next++; k < count; k = next++) f(k);
      });
    for (auto& t : pool) t.join();
  }

  const GradedSectionRing& ring_;
  KoszulOptions options_;
  detail::BinomialTable binom_;
  std::mutex mutex_;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> ranks_;
};

inline std::size_t koszul_betti(const GradedSectionRing& ring, std::size_t i, std::size_t j,
                                const KoszulOptions& options = {}) {
  KoszulComplex complex(ring, options);
  return complex.betti(i, j);
}

/// beta_{i,j} for 0 <= i <= max_i and i <= j <= i + max_slope; zero entries
/// are implicit.
class BettiTable {
 public:
  BettiTable() = default;
  BettiTable(LatticePolytope base, std::size_t dilation, std::size_t dim_V, std::size_t max_i,
             std::size_t max_slope)
      : base_(std::move(base)), dilation_(dilation), dim_V_(dim_V), max_i_(max_i),
        max_slope_(max_slope) {}

  std::size_t max_i() const { return max_i_; }
  std::size_t max_slope() const { return max_slope_; }
  std::size_t dilation() const { return dilation_; }
  std::size_t dim_V() const { return dim_V_; }
  const LatticePolytope& base_polytope() const { return *base_; }

  bool in_window(std::size_t i, std::size_t j) const {
    return i <= max_i_ && j >= i && j - i <= max_slope_;
  }
  std::size_t at(std::size_t i, std::size_t j) const {
    if (!in_window(i, j))
      throw WindowError("beta_{" + std::to_string(i) + "," + std::to_string(j) + "} is outside the table window");
    auto it = entries_.find({i, j});
    return it == entries_.end() ? 0 : it->second;
  }
  void set(std::size_t i, std::size_t j, std::size_t value) {
    if (value == 0) entries_.erase({i, j});
    else entries_[{i, j}] = value;
  }
  /// Nonzero entries keyed by (i, j).
  const std::map<std::pair<std::size_t, std::size_t>, std::size_t>& entries() const { return entries_; }

  friend bool operator==(const BettiTable& a, const BettiTable& b) {
    return a.dilation_ == b.dilation_ && a.dim_V_ == b.dim_V_ && a.max_i_ == b.max_i_ &&
           a.max_slope_ == b.max_slope_ && a.entries_ == b.entries_;
  }

 private:
  std::optional<LatticePolytope> base_;
  std::size_t dilation_ = 1;
  std::size_t dim_V_ = 0;
  std::size_t max_i_ = 0;
  std::size_t max_slope_ = 0;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> entries_;
};

inline BettiTable betti_table(KoszulComplex& complex, std::size_t max_i, std::size_t max_slope) {
  const auto& ring = complex.ring();
  if (max_slope + 1 > ring.max_degree())
    throw WindowError("Betti window of slope " + std::to_string(max_slope) + " needs ring degree " +
                      std::to_string(max_slope + 1));
  BettiTable table(ring.base_polytope(), ring.dilation(), ring.dim_V(), max_i, max_slope);
  for (std::size_t i = 0; i <= max_i; ++i)
    for (std::size_t j = i; j <= i + max_slope; ++j) table.set(i, j, complex.betti(i, j));
  return table;
}

inline BettiTable betti_table(const GradedSectionRing& ring, std::size_t max_i, std::size_t max_slope,
                              const KoszulOptions& options = {}) {
  KoszulComplex complex(ring, options);
  return betti_table(complex, max_i, max_slope);
}

enum class NpStatus { Fails, VerifiedUpTo, Proven };

struct BettiCertificate {
  std::size_t i = 0, j = 0, beta = 0;
  friend bool operator==(const BettiCertificate&, const BettiCertificate&) = default;
};

struct NpVerdict {
  std::size_t p = 0;
  NpStatus status = NpStatus::VerifiedUpTo;
  std::optional<BettiCertificate> certificate;  // Fails
  std::size_t bound = 0;                        // VerifiedUpTo: slope window
  std::string criterion;                        // Proven

  bool fails() const { return status == NpStatus::Fails; }
};

inline const char* to_string(NpStatus s) {
  switch (s) {
    case NpStatus::Fails: return "FAILS";
    case NpStatus::VerifiedUpTo: return "VERIFIED_UP_TO";
    case NpStatus::Proven: return "PROVEN";
  }
  return "?";
}

/// (N_p) for p = 0..pmax read off a table with max_i >= pmax. N_p fails once
/// beta_{0,j} > 0 for some j >= 1 or beta_{i,j} > 0 with 1 <= i <= p and
/// j != i+1; failures are inherited upward.
inline std::vector<NpVerdict> np_verdicts(const BettiTable& table, std::size_t pmax) {
  if (pmax > table.max_i()) throw WindowError("np verdicts need max_i >= pmax");
  std::vector<NpVerdict> out;
  std::optional<BettiCertificate> failure;
  for (std::size_t p = 0; p <= pmax; ++p) {
    const std::size_t i = p;
    for (std::size_t j = i; j <= i + table.max_slope() && !failure; ++j) {
      const bool linear = i == 0 ? j == 0 : j == i + 1;
      if (linear) continue;
      if (const auto beta = table.at(i, j); beta > 0) failure = BettiCertificate{i, j, beta};
    }
    NpVerdict v;
    v.p = p;
    if (failure) {
      v.status = NpStatus::Fails;
      v.certificate = failure;
    } else {
      v.status = NpStatus::VerifiedUpTo;
      v.bound = table.max_slope();
    }
    out.push_back(std::move(v));
  }
  return out;
}

inline std::vector<NpVerdict> np_level(const GradedSectionRing& ring, std::size_t pmax,
                                       std::size_t max_slope, const KoszulOptions& options = {}) {
  return np_verdicts(betti_table(ring, pmax, max_slope, options), pmax);
}

/// Coefficients of (1-t)^{dim V} * sum_d h(c d) t^d up to degree jmax.
inline std::vector<Integer> k_polynomial(const LatticePolytope& base, std::size_t dilation,
                                         std::size_t dim_V, std::size_t jmax) {
  const auto h = ehrhart_polynomial(base);
  std::vector<Integer> out;
  for (std::size_t j = 0; j <= jmax; ++j) {
    Integer acc = 0;
    for (std::size_t k = 0; k <= std::min(j, dim_V); ++k) {
      const Rational hv = h(static_cast<long>(dilation * (j - k)));
      const Integer term = binomial(static_cast<long>(dim_V), static_cast<long>(k)) * Integer(hv);
      acc += k % 2 == 0 ? term : Integer(-term);
    }
    out.push_back(acc);
  }
  return out;
}

/// Columns j whose every possibly nonzero entry lies in the window, assuming
/// entries beyond the slope window vanish.
inline std::vector<std::size_t> k_polynomial_columns(const BettiTable& table) {
  std::vector<std::size_t> cols;
  for (std::size_t j = 0; j <= table.max_i() + table.max_slope(); ++j)
    if (std::min(j, table.dim_V()) <= table.max_i()) cols.push_back(j);
  return cols;
}

/// Sum_i (-1)^i beta_{i,j} against the Hilbert series numerator, for every
/// column covered by the window.
inline bool k_polynomial_checksum(const BettiTable& table) {
  const auto cols = k_polynomial_columns(table);
  if (cols.empty()) return true;
  const auto expected = k_polynomial(table.base_polytope(), table.dilation(), table.dim_V(), cols.back());
  for (std::size_t j : cols) {
    Integer alternating = 0;
    for (std::size_t i = 0; i <= std::min(j, table.max_i()); ++i) {
      if (!table.in_window(i, j)) continue;
      const long beta = static_cast<long>(table.at(i, j));
      alternating += i % 2 == 0 ? beta : -beta;
    }
    if (alternating != expected[j]) return false;
  }
  return true;
}

}  // namespace toricsyz
