#pragma once

// On-disk cache for Betti tables, keyed by a content hash of the canonical
// inputs and the engine version.

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <string_view>

#include "toricsyz/io.hpp"

namespace toricsyz {

inline constexpr std::string_view kEngineVersion = "toricsyz-betti-1";

inline std::uint64_t fnv1a64(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline std::string betti_cache_key(const LatticePolytope& poly, std::size_t dilation, std::size_t max_i,
                                   std::size_t max_slope, bool certify) {
  const json canonical = {{"engine", kEngineVersion}, {"vertices", to_json(poly.vertices())},
                          {"c", dilation},           {"max_i", max_i},
                          {"max_slope", max_slope},  {"certify", certify}};
  char hex[17];
  std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(fnv1a64(canonical.dump())));
  return hex;
}

class BettiCache {
 public:
  explicit BettiCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

  std::optional<json> load(const std::string& key) const {
    std::ifstream in(dir_ / (key + ".json"));
    if (!in) return std::nullopt;
    try {
      return json::parse(in);
    } catch (const json::parse_error&) {
      return std::nullopt;  // torn write; recompute
    }
  }

  void store(const std::string& key, const json& value) const {
    std::filesystem::create_directories(dir_);
    const auto tmp = dir_ / (key + ".json.tmp");
    std::ofstream(tmp) << value.dump() << '\n';
    std::filesystem::rename(tmp, dir_ / (key + ".json"));
  }

 private:
  std::filesystem::path dir_;
};

}  // namespace toricsyz
