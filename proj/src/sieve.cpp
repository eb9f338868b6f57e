#include "mobskew/sieve.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstring>
#include <fstream>
#include <thread>

#include "mobskew/errors.hpp"
#include "mobskew/parallel.hpp"

namespace mobskew {

namespace {

constexpr char kMagic[8] = {'M', 'S', 'I', 'E', 'V', 'E', '0', '1'};

std::uint64_t isqrt_u64(std::uint64_t n) {
    if (n == 0) return 0;
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

std::vector<std::uint64_t> primes_upto(std::uint64_t limit) {
    std::vector<std::uint64_t> primes;
    if (limit < 2) return primes;
    std::vector<char> comp(limit + 1, 0);
    for (std::uint64_t i = 2; i <= limit; ++i) {
        if (comp[i]) continue;
        primes.push_back(i);
        for (std::uint64_t j = i * i; j <= limit; j += i) comp[j] = 1;
    }
    return primes;
}

// Sieve one segment [lo, hi] into out[lo..hi].  rem tracks the unfactored
// part of each n so the single large prime factor, if any, is caught at the
// end.
void sieve_segment(std::uint64_t lo, std::uint64_t hi, MuKind kind,
                   const std::vector<std::uint64_t>& primes,
                   std::vector<std::uint64_t>& rem, std::int8_t* out) {
    const std::uint64_t len = hi - lo + 1;
    rem.resize(len);
    for (std::uint64_t i = 0; i < len; ++i) rem[i] = lo + i;

    std::vector<std::int8_t> sign(len, 1);
    std::vector<char> zero(len, 0);

    for (std::uint64_t p : primes) {
        if (p * p > hi) break;
        std::uint64_t start = ((lo + p - 1) / p) * p;
        for (std::uint64_t n = start; n <= hi; n += p) {
            std::uint64_t i = n - lo;
            unsigned cnt = 0;
            while (rem[i] % p == 0) {
                rem[i] /= p;
                ++cnt;
            }
            if (kind == MuKind::moebius) {
                if (cnt >= 2) zero[i] = 1;
                else sign[i] = -sign[i];
            } else {
                if (cnt & 1) sign[i] = -sign[i];
            }
        }
    }
    for (std::uint64_t i = 0; i < len; ++i) {
        if (rem[i] > 1) sign[i] = -sign[i]; // one leftover prime > sqrt(hi)
        out[i] = zero[i] ? 0 : sign[i];
    }
}

MobiusTable run_sieve(std::uint64_t n_max, std::uint64_t segment_size, unsigned threads,
                      std::uint64_t memory_budget, MuKind kind) {
    if (n_max < 1) throw config_error("sieve: n_max must be >= 1");
    if (segment_size < 1) throw config_error("sieve: segment_size must be >= 1");
    if (n_max + 1 > memory_budget)
        throw resource_exhausted("sieve: n_max " + std::to_string(n_max) +
                                 " exceeds memory budget of " + std::to_string(memory_budget) +
                                 " bytes");

    MobiusTable table;
    table.n_max = n_max;
    table.kind = kind;
    table.values.assign(n_max + 1, 0);
    table.values[1] = 1;
    if (n_max == 1) return table;

    const auto primes = primes_upto(isqrt_u64(n_max));
    const std::uint64_t nsegs = (n_max - 1 + segment_size) / segment_size; // covering [2, n_max]

    parallel_for_index(nsegs, threads, [&](std::size_t s) {
        thread_local std::vector<std::uint64_t> rem;
        std::uint64_t lo = 2 + s * segment_size;
        std::uint64_t hi = std::min<std::uint64_t>(lo + segment_size - 1, n_max);
        sieve_segment(lo, hi, kind, primes, rem, table.values.data() + lo);
    });
    return table;
}

} // namespace

MobiusTable mobius_sieve(std::uint64_t n_max, std::uint64_t segment_size, unsigned threads,
                         std::uint64_t memory_budget) {
    return run_sieve(n_max, segment_size, threads, memory_budget, MuKind::moebius);
}

MobiusTable liouville_sieve(std::uint64_t n_max, std::uint64_t segment_size, unsigned threads,
                            std::uint64_t memory_budget) {
    return run_sieve(n_max, segment_size, threads, memory_budget, MuKind::liouville);
}

int mobius_single(std::uint64_t n) {
    if (n == 0) throw config_error("mobius_single: n must be >= 1");
    int sign = 1;
    for (std::uint64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (n % p == 0) {
            n /= p;
            if (n % p == 0) return 0;
            sign = -sign;
        }
    }
    if (n > 1) sign = -sign;
    return sign;
}

int liouville_single(std::uint64_t n) {
    if (n == 0) throw config_error("liouville_single: n must be >= 1");
    int sign = 1;
    for (std::uint64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        while (n % p == 0) {
            n /= p;
            sign = -sign;
        }
    }
    if (n > 1) sign = -sign;
    return sign;
}

MertensSeries mertens(const MobiusTable& table, const std::vector<std::uint64_t>& checkpoints) {
    for (std::uint64_t N : checkpoints)
        if (N > table.n_max || N < 1)
            throw config_error("mertens: checkpoint outside [1, n_max]");

    std::vector<std::uint64_t> sorted = checkpoints;
    std::sort(sorted.begin(), sorted.end());

    MertensSeries out;
    out.checkpoints.reserve(sorted.size());
    std::int64_t acc = 0;
    std::uint64_t n = 1;
    for (std::uint64_t N : sorted) {
        for (; n <= N; ++n) acc += table.values[n];
        out.checkpoints.emplace_back(N, acc);
    }
    return out;
}

void save_table(const MobiusTable& table, const std::filesystem::path& path) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("save_table: cannot open " + path.string());
    f.write(kMagic, 8);
    std::uint64_t n = table.n_max;
    char le[8];
    for (int i = 0; i < 8; ++i) le[i] = static_cast<char>((n >> (8 * i)) & 0xff);
    f.write(le, 8);
    f.write(reinterpret_cast<const char*>(table.values.data() + 1),
            static_cast<std::streamsize>(table.n_max));
    char tag = static_cast<char>(table.kind);
    f.write(&tag, 1);
    if (!f) throw std::runtime_error("save_table: write failed for " + path.string());
}

MobiusTable load_table(const std::filesystem::path& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw cache_corrupt("load_table: cannot open " + path.string());
    char magic[8];
    f.read(magic, 8);
    if (!f || std::memcmp(magic, kMagic, 8) != 0)
        throw cache_corrupt("load_table: bad magic in " + path.string());
    char le[8];
    f.read(le, 8);
    if (!f) throw cache_corrupt("load_table: truncated header in " + path.string());
    std::uint64_t n = 0;
    for (int i = 0; i < 8; ++i) n |= (static_cast<std::uint64_t>(static_cast<unsigned char>(le[i])) << (8 * i));

    MobiusTable table;
    table.n_max = n;
    table.values.assign(n + 1, 0);
    table.values[0] = 0;
    f.read(reinterpret_cast<char*>(table.values.data() + 1), static_cast<std::streamsize>(n));
    char tag;
    f.read(&tag, 1);
    if (!f) throw cache_corrupt("load_table: truncated body in " + path.string());
    if (tag != 0 && tag != 1) throw cache_corrupt("load_table: bad kind tag in " + path.string());
    table.kind = static_cast<MuKind>(tag);
    char extra;
    if (f.read(&extra, 1)) throw cache_corrupt("load_table: trailing bytes in " + path.string());
    for (std::uint64_t i = 1; i <= n; ++i) {
        std::int8_t v = table.values[i];
        if (v < -1 || v > 1) throw cache_corrupt("load_table: out-of-range value in " + path.string());
    }
    return table;
}

} // namespace mobskew
