#include "cloneblame/suffix_array.hpp"

#include <algorithm>
#include <numeric>

#ifdef _OPENMP
#include <omp.h>
#if defined(__GLIBCXX__)
#include <parallel/algorithm>
#define CLONEBLAME_PARALLEL_SORT 1
#endif
#endif

namespace cloneblame::detect {

namespace {

struct KeyedIndex {
    std::uint64_t key;
    std::uint32_t index;

    bool operator<(const KeyedIndex& other) const {
        return key < other.key || (key == other.key && index < other.index);
    }
};

void sort_keys(std::vector<KeyedIndex>& keys) {
#ifdef CLONEBLAME_PARALLEL_SORT
    __gnu_parallel::sort(keys.begin(), keys.end());
#else
    std::sort(keys.begin(), keys.end());
#endif
}

// Writes dense ranks for keys already in sorted order; returns number of
// distinct keys.
std::uint32_t assign_ranks(const std::vector<KeyedIndex>& keys, std::vector<std::uint32_t>& rank) {
    std::uint32_t current = 0;
    for (std::size_t i = 0; i < keys.size(); ++i) {
        if (i > 0 && keys[i].key != keys[i - 1].key) {
            ++current;
        }
        rank[keys[i].index] = current;
    }
    return keys.empty() ? 0 : current + 1;
}

}  // namespace

std::vector<std::uint32_t> suffix_array(std::span<const Symbol> text) {
    const auto n = static_cast<std::int64_t>(text.size());
    std::vector<std::uint32_t> sa(text.size());
    if (n == 0) {
        return sa;
    }
    std::vector<KeyedIndex> keys(text.size());
    std::vector<std::uint32_t> rank(text.size());

#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < n; ++i) {
        keys[i] = {text[i], static_cast<std::uint32_t>(i)};
    }
    sort_keys(keys);
    auto distinct = assign_ranks(keys, rank);

    for (std::int64_t k = 1; distinct < static_cast<std::uint32_t>(n); k *= 2) {
#pragma omp parallel for schedule(static)
        for (std::int64_t i = 0; i < n; ++i) {
            const std::uint64_t second = i + k < n ? rank[i + k] + 1ULL : 0ULL;
            keys[i] = {(static_cast<std::uint64_t>(rank[i]) << 32) | second, static_cast<std::uint32_t>(i)};
        }
        sort_keys(keys);
        distinct = assign_ranks(keys, rank);
    }

#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < n; ++i) {
        sa[rank[i]] = static_cast<std::uint32_t>(i);
    }
    return sa;
}

std::vector<std::uint32_t> suffix_array_serial(std::span<const Symbol> text) {
    std::vector<std::uint32_t> sa(text.size());
    std::iota(sa.begin(), sa.end(), 0U);
    std::sort(sa.begin(), sa.end(), [&](std::uint32_t a, std::uint32_t b) {
        return std::lexicographical_compare(text.begin() + a, text.end(), text.begin() + b, text.end());
    });
    return sa;
}

std::vector<std::uint32_t> lcp_array(std::span<const Symbol> text, std::span<const std::uint32_t> sa) {
    const auto n = static_cast<std::int64_t>(text.size());
    std::vector<std::uint32_t> lcp(text.size(), 0);
    if (n < 2) {
        return lcp;
    }
    constexpr std::uint32_t kNone = 0xFFFFFFFFU;
    std::vector<std::uint32_t> phi(text.size());
    phi[sa[0]] = kNone;
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 1; i < n; ++i) {
        phi[sa[i]] = sa[i - 1];
    }

    // plcp[i] >= plcp[i-1] - 1 lets each chunk reuse its running match length;
    // a chunk starts from zero, which only costs a little extra scanning.
    std::vector<std::uint32_t> plcp(text.size(), 0);
    int chunks = 1;
#ifdef _OPENMP
    chunks = omp_get_max_threads();
#endif
    const std::int64_t chunk_size = (n + chunks - 1) / chunks;
#pragma omp parallel for schedule(static, 1)
    for (int c = 0; c < chunks; ++c) {
        const std::int64_t begin = c * chunk_size;
        const std::int64_t end = std::min(n, begin + chunk_size);
        std::int64_t h = 0;
        for (std::int64_t i = begin; i < end; ++i) {
            if (phi[i] == kNone) {
                h = 0;
                continue;
            }
            const std::int64_t j = phi[i];
            while (i + h < n && j + h < n && text[i + h] == text[j + h]) {
                ++h;
            }
            plcp[i] = static_cast<std::uint32_t>(h);
            if (h > 0) {
                --h;
            }
        }
    }

#pragma omp parallel for schedule(static)
    for (std::int64_t i = 1; i < n; ++i) {
        lcp[i] = plcp[sa[i]];
    }
    return lcp;
}

std::vector<std::uint32_t> lcp_array_serial(std::span<const Symbol> text, std::span<const std::uint32_t> sa) {
    const std::size_t n = text.size();
    std::vector<std::uint32_t> lcp(n, 0);
    std::vector<std::uint32_t> rank(n);
    for (std::size_t i = 0; i < n; ++i) {
        rank[sa[i]] = static_cast<std::uint32_t>(i);
    }
    std::size_t h = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (rank[i] == 0) {
            h = 0;
            continue;
        }
        const std::size_t j = sa[rank[i] - 1];
        while (i + h < n && j + h < n && text[i + h] == text[j + h]) {
            ++h;
        }
        lcp[rank[i]] = static_cast<std::uint32_t>(h);
        if (h > 0) {
            --h;
        }
    }
    return lcp;
}

}  // namespace cloneblame::detect
