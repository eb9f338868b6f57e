#ifndef MOBSKEW_PARALLEL_HPP
#define MOBSKEW_PARALLEL_HPP

#include <atomic>
#include <cstdint>
#include <thread>
#include <vector>

namespace mobskew {

// Deterministic pairwise reduction over [lo, hi).
//
// The summation tree is a function of the range alone: midpoint splits down
// to sequential ascending leaves of 64 elements.  Worker threads pull whole
// subtrees at a fixed 65536-element grain, so the arithmetic (and therefore
// the result, bit for bit) is independent of the thread count.
namespace detail {

inline constexpr std::uint64_t kLeaf = 64;
inline constexpr std::uint64_t kGrain = 65536;

template <class T, class Term>
T pairwise_seq(std::uint64_t lo, std::uint64_t hi, const Term& term) {
    if (hi - lo <= kLeaf) {
        T acc{};
        for (std::uint64_t i = lo; i < hi; ++i) acc += term(i);
        return acc;
    }
    std::uint64_t mid = lo + (hi - lo) / 2;
    return pairwise_seq<T>(lo, mid, term) + pairwise_seq<T>(mid, hi, term);
}

// Collect the subtree ranges at which parallel workers operate; replaying
// the same splits during combination reproduces the sequential tree.
inline void split_ranges(std::uint64_t lo, std::uint64_t hi,
                         std::vector<std::pair<std::uint64_t, std::uint64_t>>& out) {
    if (hi - lo <= kGrain) {
        out.emplace_back(lo, hi);
        return;
    }
    std::uint64_t mid = lo + (hi - lo) / 2;
    split_ranges(lo, mid, out);
    split_ranges(mid, hi, out);
}

template <class T>
T combine(std::uint64_t lo, std::uint64_t hi, const std::vector<T>& parts, std::size_t& idx) {
    if (hi - lo <= kGrain) return parts[idx++];
    std::uint64_t mid = lo + (hi - lo) / 2;
    T left = combine(lo, mid, parts, idx);
    T right = combine(mid, hi, parts, idx);
    return left + right;
}

} // namespace detail

template <class T, class Term>
T pairwise_map_reduce(std::uint64_t lo, std::uint64_t hi, const Term& term,
                      unsigned threads = 1) {
    if (hi <= lo) return T{};
    if (threads <= 1 || hi - lo <= detail::kGrain)
        return detail::pairwise_seq<T>(lo, hi, term);

    std::vector<std::pair<std::uint64_t, std::uint64_t>> ranges;
    detail::split_ranges(lo, hi, ranges);
    std::vector<T> parts(ranges.size());

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= ranges.size()) break;
            parts[i] = detail::pairwise_seq<T>(ranges[i].first, ranges[i].second, term);
        }
    };
    std::vector<std::thread> pool;
    unsigned n = std::min<std::size_t>(threads, ranges.size());
    pool.reserve(n);
    for (unsigned t = 0; t < n; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();

    std::size_t idx = 0;
    return detail::combine<T>(lo, hi, parts, idx);
}

// Run fn(i) for i in [0, count) on a pool; order unspecified, fn must write
// to disjoint state.
template <class F>
void parallel_for_index(std::size_t count, unsigned threads, const F& fn) {
    if (count == 0) return;
    if (threads <= 1 || count == 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= count) break;
            fn(i);
        }
    };
    std::vector<std::thread> pool;
    unsigned n = static_cast<unsigned>(std::min<std::size_t>(threads, count));
    pool.reserve(n);
    for (unsigned t = 0; t < n; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
}

} // namespace mobskew

#endif
