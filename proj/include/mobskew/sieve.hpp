#ifndef MOBSKEW_SIEVE_HPP
#define MOBSKEW_SIEVE_HPP

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace mobskew {

enum class MuKind : std::uint8_t { moebius = 0, liouville = 1 };

// Sieved values of mu (or lambda) on [1, n_max], one signed byte per n.
// Immutable once built; safe to share across threads.
struct MobiusTable {
    std::uint64_t n_max = 0;
    MuKind kind = MuKind::moebius;
    std::vector<std::int8_t> values; // index n, values[0] unused

    std::int8_t mu(std::uint64_t n) const { return values[n]; }
};

struct MertensSeries {
    std::vector<std::pair<std::uint64_t, std::int64_t>> checkpoints;
};

inline constexpr std::uint64_t kDefaultSegmentSize = 1u << 20;
inline constexpr std::uint64_t kDefaultMemoryBudget = 3ull << 30; // bytes

// Segmented sieve for mu(n) on [1, n_max].  Output is independent of
// segment_size and thread count.
MobiusTable mobius_sieve(std::uint64_t n_max,
                         std::uint64_t segment_size = kDefaultSegmentSize,
                         unsigned threads = 1,
                         std::uint64_t memory_budget = kDefaultMemoryBudget);

// lambda(n) = (-1)^Omega(n), Omega counted with multiplicity.
MobiusTable liouville_sieve(std::uint64_t n_max,
                            std::uint64_t segment_size = kDefaultSegmentSize,
                            unsigned threads = 1,
                            std::uint64_t memory_budget = kDefaultMemoryBudget);

// Trial-division oracles for cross-validating the sieves.
int mobius_single(std::uint64_t n);
int liouville_single(std::uint64_t n);

// Exact prefix sums M(N) at the given checkpoints (each N <= table.n_max).
MertensSeries mertens(const MobiusTable& table, const std::vector<std::uint64_t>& checkpoints);

// Binary cache: 16-byte header (magic "MSIEVE01", u64 LE n_max), then one
// signed byte per n starting at n = 1, then a 1-byte kind tag.
void save_table(const MobiusTable& table, const std::filesystem::path& path);
MobiusTable load_table(const std::filesystem::path& path);

} // namespace mobskew

#endif
