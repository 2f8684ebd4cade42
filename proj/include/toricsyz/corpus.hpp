#pragma once

// Reproducible pseudo-random lattice polytopes for property sweeps.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "toricsyz/errors.hpp"
#include "toricsyz/io.hpp"
#include "toricsyz/lattice.hpp"

namespace toricsyz {

/// `count` distinct full-dimensional polytopes conv(k random points of
/// [0, coord_bound]^dim), k in [dim+1, dim+3]. Same seed, same list.
inline std::vector<LatticePolytope> generate_corpus(std::uint64_t seed, std::size_t count, std::size_t dim,
                                                    std::size_t coord_bound) {
  if (dim < 1 || dim > 4) throw InputError("corpus dimension must be in 1..4");
  if (coord_bound < 1 || coord_bound > 6) throw InputError("corpus coordinate bound must be in 1..6");
  std::mt19937_64 rng(seed);
  std::vector<LatticePolytope> out;
  std::set<std::string> seen;
  std::size_t attempts = 0;
  while (out.size() < count) {
    if (++attempts > 1000 * (count + 1)) throw InputError("could not find enough distinct polytopes");
    const std::size_t k = dim + 1 + rng() % 3;
    std::vector<LatticePoint> pts;
    for (std::size_t v = 0; v < k; ++v) {
      LatticePoint p;
      for (std::size_t t = 0; t < dim; ++t) p.coords.emplace_back(static_cast<long>(rng() % (coord_bound + 1)));
      pts.push_back(std::move(p));
    }
    auto poly = normalize_full_dim(std::move(pts));
    if (poly.dim() != dim || poly.embedding()) continue;
    if (!seen.insert(to_json(poly).dump()).second) continue;
    out.push_back(std::move(poly));
  }
  return out;
}

/// Writes poly_000.json, poly_001.json, ... and returns the paths.
inline std::vector<std::string> write_corpus(const std::vector<LatticePolytope>& polys,
                                             const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  std::vector<std::string> paths;
  for (std::size_t k = 0; k < polys.size(); ++k) {
    char name[32];
    std::snprintf(name, sizeof name, "poly_%03zu.json", k);
    const auto path = dir / name;
    std::ofstream(path) << to_json(polys[k]).dump() << '\n';
    paths.push_back(path.string());
  }
  return paths;
}

}  // namespace toricsyz
