#pragma once

#include "arco/problem.hpp"

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace arco::bench {

inline constexpr std::uint64_t kOracleSeed = 20240601;
inline constexpr int kOracleSamples = 1'000'000;
inline constexpr int kOraclePolishStarts = 100;

struct OracleResult {
    double f_min;
    double f_max;
    Vector x_min;
    Vector x_max;
};

/// Dense LHS search plus bounded compass-search polish from the best
/// `polish_starts` samples, for both the minimum and the maximum.
OracleResult dense_search(const std::function<double(const Vector&)>& f, const Bounds& bounds,
                          std::uint64_t seed, int samples, int polish_starts = kOraclePolishStarts);

struct RangeEntry {
    std::string family;
    int agent;
    double f_min;
    double f_max;
    double table_optimum;
    bool within_tolerance;  // oracle minimum within 1% of the tabulated value
};

struct RangeCache {
    int version = 1;
    std::uint64_t oracle_seed = kOracleSeed;
    int samples = kOracleSamples;
    std::vector<RangeEntry> entries;

    const RangeEntry* find(const std::string& family, int agent) const;
};

/// Runs the oracle over every agent of every built-in family.
RangeCache build_range_cache(std::uint64_t seed = kOracleSeed, int samples = kOracleSamples);

std::string serialize(const RangeCache& cache);
RangeCache parse_range_cache(const std::string& text);

void write_range_cache(const RangeCache& cache, const std::filesystem::path& path);
std::optional<RangeCache> read_range_cache(const std::filesystem::path& path);

/// Default cache location in the source tree's data directory.
std::filesystem::path default_range_cache_path();

/// (f_min, f_max) for a built-in agent on its table bounds. Uses the cache
/// file when present, otherwise runs the oracle (same seed, same answer).
std::pair<double, double> function_range(const std::string& family, int agent);

/// Overrides the cache file consulted by function_range.
void set_range_cache_path(const std::filesystem::path& path);

}  // namespace arco::bench
