#pragma once

#include "arithdyn/zsigmondy.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace arithdyn {

/// Malformed, tampered or mismatched cache file. Messages name the line.
class CacheError : public InputError {
public:
    using InputError::InputError;
};

/// FNV-1a (64 bit, hex) of the canonical map text and starting point.
std::string map_hash(const RationalMap& map, const ExtRational& alpha);

/// One JSON line: {"map_hash", "n", "numer", "denom", "factor_data"}.
/// Infinity is numer 1, denom 0. factor_data is null for undefined levels,
/// {"primitive_part"} when only primitivity was decided, and additionally
/// {"factored"} when the square-free check ran.
std::string cache_line(const std::string& hash, const OrbitRecord& r);

/// Loads and verifies a cache file for (map, alpha): every line must parse,
/// carry the expected hash, continue n = 1, 2, ... and satisfy
/// value_n = phi(value_(n-1)); primitive parts and factor data are
/// re-checked. A missing file yields no records.
std::vector<OrbitRecord> load_cache(const std::filesystem::path& path, const RationalMap& map,
                                    const ExtRational& alpha);

/// Appends records (in order) to the file, creating it if needed.
void append_cache(const std::filesystem::path& path, const std::string& hash, const std::vector<OrbitRecord>& records);

/// Default cache file for (map, alpha) under $ARITHDYN_CACHE_DIR, if set.
std::optional<std::filesystem::path> default_cache_path(const RationalMap& map, const ExtRational& alpha);

/// zsigmondy_report that resumes from `path` and appends newly computed
/// levels. The report equals the fresh one.
ZsigmondyReport zsigmondy_report_cached(const RationalMap& map, const ExtRational& alpha,
                                        const ZsigmondyOptions& opts, const std::filesystem::path& path);

}  // namespace arithdyn
