#pragma once

// JSON interchange. Integers are JSON integers when they fit, rationals are
// exact fraction strings, never floating point.

#include <algorithm>
#include <cstddef>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "toricsyz/cohomology.hpp"
#include "toricsyz/criteria.hpp"
#include "toricsyz/ehrhart.hpp"
#include "toricsyz/errors.hpp"
#include "toricsyz/koszul.hpp"
#include "toricsyz/lattice.hpp"
#include "toricsyz/semigroup.hpp"

namespace toricsyz {

using json = nlohmann::json;

inline json integer_to_json(const Integer& x) {
  if (mpz_fits_slong_p(x.get_mpz_t())) return x.get_si();
  return x.get_str();
}

inline Integer integer_from_json(const json& j) {
  if (j.is_number_integer()) return Integer(j.get<long>());
  if (j.is_string()) {
    Integer x;
    if (x.set_str(j.get<std::string>(), 10) != 0) throw InputError("bad integer string " + j.dump());
    return x;
  }
  throw InputError("expected an integer, got " + j.dump());
}

inline json to_json(const LatticePoint& p) {
  json out = json::array();
  for (const auto& c : p.coords) out.push_back(integer_to_json(c));
  return out;
}

inline LatticePoint point_from_json(const json& j) {
  if (!j.is_array()) throw InputError("expected a point as an integer array, got " + j.dump());
  LatticePoint p;
  for (const auto& c : j) p.coords.push_back(integer_from_json(c));
  return p;
}

inline json to_json(const std::vector<LatticePoint>& pts) {
  json out = json::array();
  for (const auto& p : pts) out.push_back(to_json(p));
  return out;
}

/// {"vertices": [[int, ...], ...]}
inline json to_json(const LatticePolytope& poly) { return {{"vertices", to_json(poly.vertices())}}; }

inline std::vector<LatticePoint> vertices_from_json(const json& j) {
  if (!j.is_object() || !j.contains("vertices") || !j["vertices"].is_array())
    throw InputError("polytope JSON needs a \"vertices\" array");
  std::vector<LatticePoint> pts;
  for (const auto& v : j["vertices"]) pts.push_back(point_from_json(v));
  if (pts.empty()) throw InputError("polytope has no vertices");
  return pts;
}

inline LatticePolytope polytope_from_json(const json& j) { return normalize_full_dim(vertices_from_json(j)); }

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError(path + ": " + e.what());
  }
}

inline LatticePolytope read_polytope(const std::string& path) { return polytope_from_json(read_json_file(path)); }

/// {"coeffs": ["1", "3/2", "3/2"]}, lowest degree first.
inline json to_json(const EhrhartPolynomial& h) {
  json coeffs = json::array();
  for (const auto& c : h.coeffs()) coeffs.push_back(to_string(c));
  return {{"coeffs", coeffs}};
}

inline EhrhartPolynomial ehrhart_from_json(const json& j) {
  if (!j.contains("coeffs")) throw InputError("polynomial JSON needs \"coeffs\"");
  std::vector<Rational> coeffs;
  for (const auto& c : j["coeffs"]) coeffs.push_back(parse_rational(c.get<std::string>()));
  return EhrhartPolynomial(std::move(coeffs));
}

inline json to_json(const RootData& roots) {
  json rs = json::array();
  for (const auto& x : roots.integer_roots) rs.push_back(integer_to_json(x));
  return {{"r", roots.r}, {"integer_roots", rs}};
}

inline json to_json(const NormalityReport& report) {
  json out = {{"normal", report.normal}, {"checked_up_to", report.checked_up_to}};
  if (report.witness) out["witness"] = {{"point", to_json(report.witness->point)}, {"m", report.witness->m}};
  else out["witness"] = nullptr;
  return out;
}

/// {"i,j": value} over the nonzero entries.
inline json to_json(const BettiTable& table) {
  json out = json::object();
  for (const auto& [ij, beta] : table.entries())
    out[std::to_string(ij.first) + "," + std::to_string(ij.second)] = beta;
  return out;
}

/// Reads {"i,j": value} back into a table with the given window metadata.
inline BettiTable betti_from_json(const json& j, const LatticePolytope& base, std::size_t dilation,
                                  std::size_t dim_V, std::size_t max_i, std::size_t max_slope) {
  BettiTable table(base, dilation, dim_V, max_i, max_slope);
  for (const auto& [key, value] : j.items()) {
    const auto comma = key.find(',');
    if (comma == std::string::npos) throw InputError("bad Betti key " + key);
    table.set(std::stoul(key.substr(0, comma)), std::stoul(key.substr(comma + 1)), value.get<std::size_t>());
  }
  return table;
}

/// Conventional display: columns are i, rows are the slope j - i.
inline std::string betti_text(const BettiTable& table) {
  std::vector<std::vector<std::string>> cells;
  std::vector<std::string> header{""};
  for (std::size_t i = 0; i <= table.max_i(); ++i) header.push_back(std::to_string(i));
  cells.push_back(header);
  std::vector<std::string> totals{"total:"};
  for (std::size_t i = 0; i <= table.max_i(); ++i) {
    std::size_t t = 0;
    for (std::size_t s = 0; s <= table.max_slope(); ++s) t += table.at(i, i + s);
    totals.push_back(std::to_string(t));
  }
  cells.push_back(totals);
  for (std::size_t s = 0; s <= table.max_slope(); ++s) {
    std::vector<std::string> row{std::to_string(s) + ":"};
    for (std::size_t i = 0; i <= table.max_i(); ++i) {
      const auto b = table.at(i, i + s);
      row.push_back(b == 0 ? "." : std::to_string(b));
    }
    cells.push_back(row);
  }
  std::vector<std::size_t> width(cells.front().size(), 0);
  for (const auto& row : cells)
    for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
  std::ostringstream out;
  for (const auto& row : cells) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out << ' ';
      out << std::setw(static_cast<int>(width[c])) << row[c];
    }
    out << '\n';
  }
  return out.str();
}

inline json to_json(const NpVerdict& v) {
  json out = {{"p", v.p}, {"status", to_string(v.status)}};
  switch (v.status) {
    case NpStatus::Fails:
      out["certificate"] = {{"i", v.certificate->i}, {"j", v.certificate->j}, {"beta", v.certificate->beta}};
      break;
    case NpStatus::VerifiedUpTo: out["bound"] = v.bound; break;
    case NpStatus::Proven: out["criterion"] = v.criterion; break;
  }
  return out;
}

inline json to_json(const std::vector<NpVerdict>& verdicts) {
  json out = json::array();
  for (const auto& v : verdicts) out.push_back(to_json(v));
  return out;
}

inline json to_json(const CohomologyProfile& profile) {
  json dims = json::object();
  for (const auto& [i, h] : profile.dims) dims[std::to_string(i)] = integer_to_json(h);
  return {{"context", profile.context},
          {"twist", profile.twist},
          {"dims", dims},
          {"euler_characteristic", integer_to_json(profile.euler_characteristic())}};
}

inline json to_json(const CriterionResult& c) {
  json out = {{"criterion", c.criterion}, {"inputs", c.inputs}};
  out["guaranteed_p"] = c.guaranteed_p ? json(*c.guaranteed_p) : json(nullptr);
  out["threshold"] = c.threshold ? json(*c.threshold) : json(nullptr);
  if (c.criterion == "cor_polytope") {
    out["vacuous"] = c.vacuous;
    out["dilation"] = c.dilation ? json(*c.dilation) : json(nullptr);
    out["cross_check_normal"] = c.cross_check_normal ? json(*c.cross_check_normal) : json(nullptr);
  }
  return out;
}

inline std::string criteria_text(const std::vector<CriterionResult>& results) {
  std::ostringstream out;
  out << std::left << std::setw(24) << "criterion" << std::setw(12) << "threshold" << "guarantee\n";
  for (const auto& c : results) {
    out << std::setw(24) << c.criterion << std::setw(12)
        << (c.threshold ? std::to_string(*c.threshold) : std::string("-"));
    if (c.guaranteed()) out << "(N_" << *c.guaranteed_p << ")";
    else if (c.vacuous) out << "vacuous";
    else out << "none";
    out << '\n';
  }
  return out.str();
}

}  // namespace toricsyz
