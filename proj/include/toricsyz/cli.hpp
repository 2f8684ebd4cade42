#pragma once

// Job execution behind the toricsyz command line.

#include <cstdlib>
#include <filesystem>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "toricsyz/cache.hpp"
#include "toricsyz/corpus.hpp"
#include "toricsyz/io.hpp"

namespace toricsyz {

enum class Command { Count, Ehrhart, Roots, Normality, Betti, Np, Cohomology, Regularity, Predict, Criteria, Corpus, Report };

enum class OutputFormat { Json, Text };

struct Limits {
  std::size_t max_dilation = 64;
  std::size_t max_i = 32;
  std::size_t max_slope = 16;
  std::size_t max_mmax = 16;
  std::size_t max_threads = 256;
};

struct JobConfig {
  Command command = Command::Ehrhart;
  std::string polytope_path;
  std::size_t dilation = 1;                 // c
  std::optional<std::size_t> max_i;         // default min(dim V, 4); np uses pmax
  std::optional<std::size_t> max_slope;     // default dim P + 2
  std::size_t pmax = 2;
  std::optional<std::size_t> mmax;
  bool certify = false;
  std::size_t threads = 1;
  std::optional<std::string> cache_dir;     // else TORICSYZ_CACHE_DIR, else no cache
  OutputFormat format = OutputFormat::Json;

  long d = 1;                               // count, cohomology, criteria
  std::size_t p = 1;                        // criteria, predict
  bool list_points = false;                 // count
  bool with_criteria = false;               // np
  std::vector<std::size_t> product;         // n_1..n_l: work on P^{n_1} x ... x P^{n_l}
  std::vector<long> twist;                  // cohomology / regularity / predict / criteria (products)
  std::string examples = "paper";           // report

  std::uint64_t seed = 1;                   // corpus
  std::size_t count = 10;
  std::size_t dim = 2;
  std::size_t coord_bound = 4;
  std::string out_dir = "corpus";

  Limits limits;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 2;
inline constexpr int kExitWindow = 3;
inline constexpr int kExitConsistency = 4;

namespace detail {

inline void check_limits(const JobConfig& cfg) {
  const auto& l = cfg.limits;
  if (cfg.dilation < 1) throw InputError("--c must be at least 1");
  if (cfg.dilation > l.max_dilation) throw WindowError("--c exceeds the limit " + std::to_string(l.max_dilation));
  if (cfg.max_i && *cfg.max_i > l.max_i) throw WindowError("--max-i exceeds the limit " + std::to_string(l.max_i));
  if (cfg.pmax > l.max_i) throw WindowError("--pmax exceeds the limit " + std::to_string(l.max_i));
  if (cfg.max_slope && *cfg.max_slope > l.max_slope)
    throw WindowError("--max-slope exceeds the limit " + std::to_string(l.max_slope));
  if (cfg.mmax && *cfg.mmax > l.max_mmax) throw WindowError("--mmax exceeds the limit " + std::to_string(l.max_mmax));
  if (cfg.threads < 1 || cfg.threads > l.max_threads) throw InputError("--threads out of range");
}

inline std::optional<std::filesystem::path> cache_root(const JobConfig& cfg) {
  if (cfg.cache_dir) return std::filesystem::path(*cfg.cache_dir);
  if (const char* env = std::getenv("TORICSYZ_CACHE_DIR"); env && *env) return std::filesystem::path(env);
  return std::nullopt;
}

inline KoszulOptions koszul_options(const JobConfig& cfg) {
  KoszulOptions opts;
  opts.threads = cfg.threads;
  opts.certify = cfg.certify;
  return opts;
}

/// Betti table of (P, c) over the window, through the cache when one is set.
inline BettiTable compute_betti(const JobConfig& cfg, const LatticePolytope& poly, std::size_t max_i,
                                std::size_t max_slope) {
  const auto root = cache_root(cfg);
  const std::string key = betti_cache_key(poly, cfg.dilation, max_i, max_slope, cfg.certify);
  if (root) {
    if (auto hit = BettiCache(*root).load(key)) {
      return betti_from_json(hit->at("betti"), poly, cfg.dilation, hit->at("dim_V").get<std::size_t>(), max_i,
                             max_slope);
    }
  }
  const auto ring = build_ring(poly, cfg.dilation, max_slope + 1);
  auto table = betti_table(ring, max_i, max_slope, koszul_options(cfg));
  if (!k_polynomial_checksum(table)) throw ConsistencyError("Betti table fails the K-polynomial checksum");
  if (root) BettiCache(*root).store(key, {{"dim_V", table.dim_V()}, {"betti", to_json(table)}});
  return table;
}

inline std::size_t default_max_slope(const JobConfig& cfg, const LatticePolytope& poly) {
  return cfg.max_slope.value_or(poly.dim() + 2);
}

inline json betti_json(const BettiTable& table) {
  return {{"c", table.dilation()},
          {"dim_V", table.dim_V()},
          {"max_i", table.max_i()},
          {"max_slope", table.max_slope()},
          {"checksum", k_polynomial_checksum(table)},
          {"betti", to_json(table)}};
}

inline std::string verdict_cell(const NpVerdict& v) {
  std::ostringstream s;
  s << to_string(v.status);
  if (v.certificate) s << "(" << v.certificate->i << "," << v.certificate->j << "," << v.certificate->beta << ")";
  return s.str();
}

struct ReportRow {
  std::string example;
  std::string claim;
  std::string computed;
  bool match = false;
};

inline std::vector<ReportRow> example_report(const JobConfig& base) {
  const auto cubic = normalize_full_dim({{1, 0}, {0, 1}, {1, 1}, {2, 2}});
  const auto simplex = normalize_full_dim({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {1, 1, 2}});
  std::vector<ReportRow> rows;

  JobConfig cfg = base;
  cfg.dilation = 1;
  {
    const auto table = compute_betti(cfg, cubic, 1, 3);
    const auto v = np_verdicts(table, 1);
    const bool cubic_generator = table.at(1, 3) == 1 && table.at(1, 2) == 0 && table.at(1, 4) == 0;
    rows.push_back({"cubic surface, L", "ideal generated by one cubic; L fails (N_1)",
                    "beta_{1,2}=" + std::to_string(table.at(1, 2)) + ", beta_{1,3}=" +
                        std::to_string(table.at(1, 3)) + "; N_1 " + verdict_cell(v[1]),
                    cubic_generator && !v[0].fails() && v[1].fails()});
  }
  cfg.dilation = 2;
  {
    const auto v = np_verdicts(compute_betti(cfg, cubic, 4, 4), 4);
    rows.push_back({"cubic surface, L^2", "L^2 satisfies (N_3), not (N_4)",
                    "N_3 " + verdict_cell(v[3]) + "; N_4 " + verdict_cell(v[4]), !v[3].fails() && v[4].fails()});
  }
  {
    const auto report = is_normal(simplex);
    const auto split = report.witness ? decompose(simplex, report.witness->point, 2) : std::nullopt;
    cfg.dilation = 1;
    const auto table = compute_betti(cfg, simplex, 0, 3);
    const bool ok = !report.normal && report.witness && report.witness->point == LatticePoint{1, 1, 1} &&
                    report.witness->m == 2 && !split && table.at(0, 2) == 1;
    rows.push_back({"(1,1,2)-simplex, L", "S -> R not surjective; (1,1,1) in 2P is no sum of two lattice points",
                    std::string("normal=") + (report.normal ? "true" : "false") + ", witness=" +
                        (report.witness ? report.witness->point.to_string() : "none") +
                        ", beta_{0,2}=" + std::to_string(table.at(0, 2)),
                    ok});
  }
  cfg.dilation = 2;
  {
    const auto v = np_verdicts(compute_betti(cfg, simplex, 2, 3), 2);
    rows.push_back({"(1,1,2)-simplex, L^2", "L^2 satisfies (N_1), not (N_2)",
                    "N_1 " + verdict_cell(v[1]) + "; N_2 " + verdict_cell(v[2]), !v[1].fails() && v[2].fails()});
  }
  return rows;
}

inline std::vector<std::size_t> unsigned_degrees(const std::vector<long>& twist) {
  std::vector<std::size_t> out;
  for (long t : twist) {
    if (t < 0) throw InputError("degrees must be nonnegative");
    out.push_back(static_cast<std::size_t>(t));
  }
  return out;
}

inline void emit(std::ostream& out, const json& j) { out << j.dump(2) << '\n'; }

inline int execute(const JobConfig& cfg, std::ostream& out) {
  check_limits(cfg);
  auto polytope = [&] {
    if (cfg.polytope_path.empty()) throw InputError("a polytope file is required");
    return read_polytope(cfg.polytope_path);
  };
  const bool product_mode = !cfg.product.empty();

  switch (cfg.command) {
    case Command::Count: {
      const auto poly = polytope();
      if (cfg.d < 0) throw InputError("--d must be nonnegative");
      const auto pts = lattice_points(poly, cfg.d);
      json j = {{"d", cfg.d}, {"count", pts.size()}};
      if (cfg.list_points) {
        json list = json::array();
        for (const auto& x : pts) list.push_back(to_json(poly.embedding() ? poly.embedding()->lift(x, cfg.d) : x));
        j["points"] = list;
      }
      emit(out, j);
      return kExitOk;
    }
    case Command::Ehrhart:
      out << to_json(ehrhart_polynomial(polytope())).dump() << '\n';
      return kExitOk;
    case Command::Roots: {
      const auto poly = polytope();
      const auto roots = integer_root_count(ehrhart_polynomial(poly));
      if (roots.r != r_of_polytope(poly)) throw ConsistencyError("root count disagrees with interior search");
      emit(out, to_json(roots));
      return kExitOk;
    }
    case Command::Normality:
      emit(out, to_json(is_normal(polytope(), cfg.mmax)));
      return kExitOk;
    case Command::Betti: {
      const auto poly = polytope();
      const std::size_t dim_V = count_lattice_points(poly, static_cast<long>(cfg.dilation));
      const auto table = compute_betti(cfg, poly, cfg.max_i.value_or(std::min<std::size_t>(dim_V, 4)),
                                       default_max_slope(cfg, poly));
      if (cfg.format == OutputFormat::Text) out << betti_text(table);
      else emit(out, betti_json(table));
      return kExitOk;
    }
    case Command::Np: {
      const auto poly = polytope();
      auto verdicts = np_verdicts(compute_betti(cfg, poly, cfg.pmax, default_max_slope(cfg, poly)), cfg.pmax);
      if (cfg.with_criteria) verdicts = annotate_with_criteria(poly, cfg.dilation, std::move(verdicts));
      emit(out, to_json(verdicts));
      return kExitOk;
    }
    case Command::Cohomology:
      if (product_mode) emit(out, to_json(profile_product(cfg.product, cfg.twist)));
      else emit(out, to_json(profile_ample_power(polytope(), cfg.twist.empty() ? cfg.d : cfg.twist.at(0))));
      return kExitOk;
    case Command::Regularity: {
      json j;
      if (product_mode) {
        j = {{"n", cfg.product}, {"twist", cfg.twist}, {"regular", is_regular_product(cfg.product, cfg.twist)}};
      } else {
        const long m = cfg.twist.empty() ? cfg.d : cfg.twist.at(0);
        j = {{"twist", m}, {"regular", is_regular_single(polytope(), m)}};
      }
      emit(out, j);
      return kExitOk;
    }
    case Command::Predict: {
      std::optional<NpPrediction> prediction;
      if (product_mode) {
        prediction = predict_product(cfg.product, cfg.twist, cfg.p);
      } else {
        prediction = predict_single(polytope(), cfg.twist.empty() ? cfg.d : cfg.twist.at(0), cfg.p);
      }
      json j = {{"p", cfg.p}, {"w1", cfg.twist}};
      j["prediction"] = prediction ? json{{"p", prediction->p}, {"twist", prediction->twist}} : json(nullptr);
      emit(out, j);
      return kExitOk;
    }
    case Command::Criteria: {
      std::vector<CriterionResult> results;
      if (product_mode) {
        if (cfg.twist.size() != cfg.product.size()) throw InputError("--twist needs one entry per factor");
        results.push_back(cor_prodproj(cfg.product, unsigned_degrees(cfg.twist), cfg.p));
        results.push_back(cor_canonical_product(cfg.product, cfg.twist, cfg.p));
      } else {
        if (cfg.d < 1) throw InputError("--d must be positive");
        results = polytope_criteria(polytope(), static_cast<std::size_t>(cfg.d), cfg.p);
      }
      if (cfg.format == OutputFormat::Text) {
        out << criteria_text(results);
      } else {
        json arr = json::array();
        for (const auto& r : results) arr.push_back(to_json(r));
        emit(out, arr);
      }
      return kExitOk;
    }
    case Command::Corpus: {
      const auto polys = generate_corpus(cfg.seed, cfg.count, cfg.dim, cfg.coord_bound);
      emit(out, write_corpus(polys, cfg.out_dir));
      return kExitOk;
    }
    case Command::Report: {
      if (cfg.examples != "paper") throw InputError("unknown example set " + cfg.examples);
      const auto rows = example_report(cfg);
      bool all = true;
      out << "| example | claim | computed | match |\n|---|---|---|---|\n";
      for (const auto& r : rows) {
        out << "| " << r.example << " | " << r.claim << " | " << r.computed << " | " << (r.match ? "yes" : "NO")
            << " |\n";
        all = all && r.match;
      }
      return all ? kExitOk : kExitConsistency;
    }
  }
  return kExitInput;
}

}  // namespace detail

/// Runs one job. Results go to `out`, diagnostics to `err`; the return value
/// is the process exit status.
inline int run(const JobConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    return detail::execute(cfg, out);
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const WindowError& e) {
    err << "limit: " << e.what() << '\n';
    return kExitWindow;
  } catch (const ConsistencyError& e) {
    err << "consistency: " << e.what() << '\n';
    return kExitConsistency;
  } catch (const json::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  }
}

}  // namespace toricsyz
