#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace cloneblame::detect {

using Symbol = std::uint32_t;

// Suffix arrays over integer texts. The parallel versions use OpenMP when the
// library is built with it; the *_serial versions are simple reference
// implementations kept for tests and benchmarks.

/// Prefix doubling; O(n log^2 n) comparisons, parallel key build and sort.
std::vector<std::uint32_t> suffix_array(std::span<const Symbol> text);

/// Plain comparison sort of all suffixes.
std::vector<std::uint32_t> suffix_array_serial(std::span<const Symbol> text);

/// lcp[i] = longest common prefix of suffixes sa[i-1] and sa[i]; lcp[0] = 0.
/// Permuted-LCP construction split into independent text chunks.
std::vector<std::uint32_t> lcp_array(std::span<const Symbol> text, std::span<const std::uint32_t> sa);

/// Kasai et al.
std::vector<std::uint32_t> lcp_array_serial(std::span<const Symbol> text, std::span<const std::uint32_t> sa);

}  // namespace cloneblame::detect
