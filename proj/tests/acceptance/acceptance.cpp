// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "oracles/oracles.hpp"
#include "toricsyz/cli.hpp"

using namespace toricsyz;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

LatticePolytope make(const std::vector<oracle::Point>& pts) {
  std::vector<LatticePoint> v;
  for (const auto& p : pts) {
    LatticePoint x;
    for (long c : p) x.coords.emplace_back(c);
    v.push_back(x);
  }
  return normalize_full_dim(std::move(v));
}

std::vector<oracle::Point> verts(const LatticePolytope& P) {
  std::vector<oracle::Point> out;
  for (const auto& v : P.vertices()) {
    oracle::Point p;
    for (const auto& c : v.coords) p.push_back(c.get_si());
    out.push_back(p);
  }
  return out;
}

const LatticePolytope kCubic = make({{1, 0}, {0, 1}, {1, 1}, {2, 2}});
const LatticePolytope kSimplex112 = make({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {1, 1, 2}});
const LatticePolytope kTriangle = make({{0, 0}, {1, 0}, {0, 1}});

struct Check {
  bool ok = true;
  std::ostringstream detail;
  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      detail << " [failed: " << what << "]";
    }
  }
};

// Tables and complexes from criteria 1-4, reused by criterion 5.
struct Computed {
  std::vector<BettiTable> tables;
  std::size_t strands_checked = 0;
  std::size_t strands_bad = 0;
};

struct Strand {
  GradedSectionRing ring;
  BettiTable table;
};

Strand compute(const LatticePolytope& P, std::size_t c, std::size_t max_i, std::size_t slope, Computed& acc) {
  auto ring = build_ring(P, c, slope + 1);
  KoszulComplex K(ring);
  auto table = betti_table(K, max_i, slope);
  for (std::size_t i = 1; i <= max_i; ++i)
    for (std::size_t j = i + 1; j <= i + slope; ++j) {
      ++acc.strands_checked;
      if (!K.d_squared_zero(i, j)) ++acc.strands_bad;
    }
  acc.tables.push_back(table);
  return {std::move(ring), std::move(table)};
}

std::vector<LatticePolytope> acceptance_corpus() {
  auto out = generate_corpus(2024, 30, 2, 4);
  for (auto& p : generate_corpus(2025, 20, 3, 3)) out.push_back(std::move(p));
  return out;
}

// Upper estimate of the chain entries touched by a table of L^c with the
// given window: C_{i,j} and the source of d_{i+1,j} for every entry.
double table_cost(const EhrhartPolynomial& h, std::size_t c, std::size_t max_i, std::size_t slope) {
  const auto N = static_cast<long>(mpz_class(h(static_cast<long>(c))).get_si());
  double cost = 0;
  for (std::size_t i = 0; i <= max_i; ++i)
    for (std::size_t s = 0; s <= slope; ++s) {
      const double rs = h(static_cast<long>(c * s)).get_d();
      cost += binomial(N, static_cast<long>(i)).get_d() * rs;
      if (s >= 1) cost += binomial(N, static_cast<long>(i + 1)).get_d() * h(static_cast<long>(c * (s - 1))).get_d();
    }
  return cost;
}

void report(int number, const Check& check, double secs) {
  std::printf("criterion %d: %s (%.2f s)%s\n", number, check.ok ? "PASS" : "FAIL", secs, check.detail.str().c_str());
  std::fflush(stdout);
}

}  // namespace

int main() {
  bool all_ok = true;
  Computed computed;
  const auto corpus = acceptance_corpus();

  {  // 1
    Check c;
    const auto t0 = Clock::now();
    const auto s = compute(kCubic, 1, 4, 4, computed);
    const std::map<std::pair<std::size_t, std::size_t>, std::size_t> expected{{{0, 0}, 1}, {{1, 3}, 1}};
    c.require(s.table.entries() == expected, "table is {b00=1, b13=1}");
    const auto v = np_verdicts(s.table, 1);
    c.require(v[0].status == NpStatus::VerifiedUpTo, "N_0 verified");
    c.require(v[1].fails() && *v[1].certificate == BettiCertificate{1, 3, 1}, "N_1 FAILS(1,3,1)");
    const double secs = seconds_since(t0);
    c.require(secs < 5, "runtime < 5 s");
    c.detail << " N_1 " << detail::verdict_cell(v[1]);
    report(1, c, secs);
    all_ok &= c.ok;
  }
  {  // 2
    Check c;
    const auto t0 = Clock::now();
    const auto s = compute(kCubic, 2, 4, 4, computed);
    const auto v = np_verdicts(s.table, 4);
    for (std::size_t p = 0; p <= 3; ++p) c.require(v[p].status == NpStatus::VerifiedUpTo, "N_" + std::to_string(p));
    c.require(v[4].fails(), "N_4 FAILS");
    const double secs = seconds_since(t0);
    c.require(secs <= 600, "runtime <= 10 min");
    c.detail << " N_3 " << detail::verdict_cell(v[3]) << ", N_4 " << detail::verdict_cell(v[4]);
    report(2, c, secs);
    all_ok &= c.ok;
  }
  {  // 3
    Check c;
    const auto t0 = Clock::now();
    const auto normal = is_normal(kSimplex112);
    c.require(!normal.normal && normal.witness && normal.witness->point == LatticePoint{1, 1, 1} &&
                  normal.witness->m == 2,
              "not normal, witness ((1,1,1), 2)");
    const auto s = compute(kSimplex112, 2, 2, 5, computed);
    const auto v = np_verdicts(s.table, 2);
    c.require(v[0].status == NpStatus::VerifiedUpTo && v[1].status == NpStatus::VerifiedUpTo, "N_1 verified");
    c.require(v[2].fails(), "N_2 FAILS");
    const double secs = seconds_since(t0);
    c.require(secs <= 120, "runtime <= 2 min");
    c.detail << " N_1 " << detail::verdict_cell(v[1]) << ", N_2 " << detail::verdict_cell(v[2]);
    report(3, c, secs);
    all_ok &= c.ok;
  }
  {  // 4
    Check c;
    const auto t0 = Clock::now();
    const auto s = compute(kTriangle, 2, 2, 4, computed);
    const auto v = np_verdicts(s.table, 2);
    for (const auto& x : v) c.require(!x.fails(), "no failure at p = " + std::to_string(x.p));
    c.require(v[2].status == NpStatus::VerifiedUpTo, "N_2 verified");
    const double secs = seconds_since(t0);
    c.require(secs < 30, "runtime < 30 s");
    report(4, c, secs);
    all_ok &= c.ok;
  }
  {  // 5
    Check c;
    const auto t0 = Clock::now();
    std::size_t pick_fail = 0, recip_fail = 0, checksum_fail = 0, np0_disagree = 0;
    for (const auto& P : corpus) {
      if (!reciprocity_check(P, 5)) ++recip_fail;
      if (P.dim() == 2) {
        const auto pick = oracle::pick(verts(P));
        for (long d = 0; d <= 5; ++d)
          if (mpq_class(count_lattice_points(P, d)) != pick.at(d)) ++pick_fail;
      }
      const auto s = compute(P, 1, 0, P.dim() + 2, computed);
      if (!k_polynomial_checksum(s.table)) ++checksum_fail;
      if (np_verdicts(s.table, 0)[0].fails() == is_normal(P).normal) ++np0_disagree;
      KoszulComplex K(s.ring);
      for (std::size_t j = 2; j <= 1 + P.dim() + 2; ++j) {
        ++computed.strands_checked;
        if (!K.d_squared_zero(1, j)) ++computed.strands_bad;
      }
    }
    for (std::size_t k = 0; k < 4; ++k)
      if (!k_polynomial_checksum(computed.tables[k])) ++checksum_fail;
    c.require(corpus.size() == 50, "50-polytope corpus");
    c.require(pick_fail == 0, "Pick");
    c.require(recip_fail == 0, "reciprocity");
    c.require(checksum_fail == 0, "K-polynomial checksum");
    c.require(np0_disagree == 0, "N_0 agrees with normality");
    c.require(computed.strands_bad == 0, "d^2 = 0");
    c.detail << " corpus=" << corpus.size() << " pick_fail=" << pick_fail << " reciprocity_fail=" << recip_fail
             << " checksum_fail=" << checksum_fail << " n0_disagree=" << np0_disagree
             << " strands=" << computed.strands_checked << " d2_nonzero=" << computed.strands_bad;
    report(5, c, seconds_since(t0));
    all_ok &= c.ok;
  }
  {  // 6
    Check c;
    const auto t0 = Clock::now();
    constexpr double kBudget = 3.0e6;
    std::size_t guarantees = 0, checked = 0, skipped = 0, counterexamples = 0;
    for (const auto& P : corpus) {
      const auto h = ehrhart_polynomial(P);
      for (std::size_t d = 1; d <= 4; ++d) {
        std::size_t top = 0;
        bool any = false;
        for (std::size_t p = 0; p <= 2; ++p)
          for (const auto& crit : polytope_criteria(P, d, p))
            if (crit.guaranteed()) {
              any = true;
              top = std::max(top, p);
              ++guarantees;
            }
        if (!any) continue;
        std::size_t slope = P.dim() + 2;
        while (slope > 1 && table_cost(h, d, top, slope) > kBudget) --slope;
        if (table_cost(h, d, top, slope) > kBudget) {
          ++skipped;
          continue;
        }
        const auto v = np_level(build_ring(P, d, slope + 1), top, slope);
        counterexamples += soundness_conflicts(P, d, v).size();
        ++checked;
      }
    }
    const double secs = seconds_since(t0);
    c.require(counterexamples == 0, "zero counterexamples");
    c.require(checked > 0, "at least one instance in reach");
    c.require(secs <= 1800, "runtime <= 30 min");
    c.detail << " guarantees=" << guarantees << " instances_checked=" << checked << " skipped_out_of_reach=" << skipped
             << " counterexamples=" << counterexamples;
    report(6, c, secs);
    all_ok &= c.ok;
  }
  {  // 7
    Check c;
    const auto t0 = Clock::now();
    c.require(is_regular_single(kTriangle, 0), "unit triangle, 0");
    c.require(!is_regular_single(kCubic, 1), "cubic triangle, 1");
    c.require(is_regular_single(kCubic, 2), "cubic triangle, 2");
    std::size_t euler_fail = 0;
    for (const auto& P : corpus) {
      const auto h = ehrhart_polynomial(P);
      for (long d = -5; d <= 5; ++d)
        if (Rational(profile_ample_power(P, d).euler_characteristic()) != h(d)) ++euler_fail;
    }
    c.require(euler_fail == 0, "Euler identity");
    c.detail << " euler_fail=" << euler_fail;
    report(7, c, seconds_since(t0));
    all_ok &= c.ok;
  }
  {  // 8
    Check c;
    const auto t0 = Clock::now();
    std::size_t mismatches = 0;
    for (std::size_t n = 1; n <= 4; ++n) {
      std::vector<LatticePoint> pts{LatticePoint::zero(n)};
      for (std::size_t k = 0; k < n; ++k) {
        auto e = LatticePoint::zero(n);
        e[k] = 1;
        pts.push_back(e);
      }
      const auto S = normalize_full_dim(pts);
      for (long a = -6; a <= 6; ++a)
        for (std::size_t i = 0; i <= n; ++i)
          if (coh_dim_product({n}, {a}, i) != coh_dim_ample_power(S, a, i)) ++mismatches;
    }
    c.require(mismatches == 0, "product profile equals simplex profile");
    c.require(cor_prodproj({2, 2}, {2, 2}, 2).guaranteed(), "cor_prodproj([2,2],(2,2),2)");
    c.require(is_regular_product({2, 2}, {0, 0}) && is_regular_product({1, 1, 1}, {0, 0, 0}) &&
                  is_regular_product({1, 3}, {0, 0}),
              "O(0,...,0) regular");
    c.detail << " mismatches=" << mismatches;
    report(8, c, seconds_since(t0));
    all_ok &= c.ok;
  }
  return all_ok ? 0 : 1;
}
