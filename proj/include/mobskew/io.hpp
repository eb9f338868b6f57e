#ifndef MOBSKEW_IO_HPP
#define MOBSKEW_IO_HPP

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "mobskew/correlation.hpp"
#include "mobskew/flows.hpp"

namespace mobskew {

inline constexpr const char* kToolVersion = "mobskew 0.1.0";

// FNV-1a 64-bit, used for manifest content checksums.
std::uint64_t fnv1a64(const void* data, std::size_t len);
std::uint64_t fnv1a64_file(const std::filesystem::path& path);

// 17 significant digits, the CSV contract for doubles.
std::string g17(double x);

void write_text_file(const std::filesystem::path& path, const std::string& body);
std::string read_text_file(const std::filesystem::path& path);

// CSV emitters; row order ascending, 17 significant digits.
std::string orbit_csv(const std::vector<std::array<double, 2>>& orbit);
std::string averages_csv(const std::vector<std::pair<std::uint64_t, Cplx>>& averages);
std::string series_csv(const CorrelationSeries& series);
CorrelationSeries series_from_csv(const std::string& body);
std::string decay_fit_json(const DecayFit& fit);

// Run manifest: config echo, tool version, per-stage wall time, cache hits,
// certified-precision report, and a checksum for every emitted file.
struct ManifestEntry {
    std::string path; // relative to the manifest's directory
    std::uint64_t checksum = 0;
};

struct RunManifest {
    std::string tool_version = kToolVersion;
    std::vector<std::pair<std::string, std::string>> config; // key, value (ordered)
    std::vector<std::pair<std::string, double>> stages_ms;
    std::uint64_t cache_hits = 0, cache_misses = 0;
    std::string precision_report;
    std::vector<ManifestEntry> outputs;
    std::vector<std::pair<std::string, std::string>> extra; // free-form key/value
};

void write_manifest(const RunManifest& m, const std::filesystem::path& path);
RunManifest read_manifest(const std::filesystem::path& path);

// Re-verification: checks every output checksum against the files on disk;
// returns the list of mismatched paths.
std::vector<std::string> verify_manifest(const std::filesystem::path& manifest_path);

} // namespace mobskew

#endif
