#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "cloneblame/lexer.hpp"
#include "cloneblame/suffix_array.hpp"

namespace cloneblame::detect {

using lexer::FileId;
using lexer::NormalizedToken;

/// Detector thresholds. Defaults are minToken=50, rnr=0.5, tks=12.
struct DetectorParams {
    std::uint32_t min_tokens = 50;
    double min_rnr = 0.5;
    std::uint32_t min_tks = 12;

    /// Throws std::invalid_argument when a field is out of range.
    void validate() const;

    friend bool operator==(const DetectorParams&, const DetectorParams&) = default;
};

/// One file's normalized stream plus the source line of every token.
struct TokenFile {
    FileId file_id = 0;
    std::vector<NormalizedToken> tokens;
    std::vector<std::uint32_t> lines;
};

/// Builds a TokenFile from a tokenizer result.
TokenFile make_token_file(FileId file_id, std::span<const lexer::Token> tokens);

struct CloneInstance {
    FileId file_id = 0;
    std::uint32_t begin_line = 0;
    std::uint32_t end_line = 0;
    std::uint32_t begin_token = 0;  // inclusive
    std::uint32_t end_token = 0;    // inclusive

    std::uint32_t length_loc() const { return end_line - begin_line + 1; }
    std::uint32_t token_count() const { return end_token - begin_token + 1; }

    friend auto operator<=>(const CloneInstance&, const CloneInstance&) = default;
};

/// All occurrences of one normalized token sequence.
struct CloneSet {
    std::uint32_t id = 0;
    std::uint32_t token_length = 0;
    std::vector<CloneInstance> instances;  // sorted by (file_id, begin_token)

    std::size_t size() const { return instances.size(); }
    double mean_length_loc() const;

    friend bool operator==(const CloneSet&, const CloneSet&) = default;
};

/// Every maximal repeat of at least `min_tokens` normalized tokens across the
/// files, one set per distinct sequence, with sets failing the RNR or TKS
/// threshold removed. Sets are ordered by first instance and numbered from 1.
std::vector<CloneSet> detect_clone_sets(std::span<const TokenFile> files, const DetectorParams& params);

/// Same result computed with the serial reference suffix array and LCP.
std::vector<CloneSet> detect_clone_sets_serial(std::span<const TokenFile> files, const DetectorParams& params);

/// Fraction of positions not covered by any tandem repeat `ww`.
/// Throws std::invalid_argument on an empty fragment.
double compute_rnr(std::span<const NormalizedToken> fragment);
double compute_rnr(std::span<const Symbol> fragment);

/// Number of distinct normalized symbols in the fragment.
std::uint32_t compute_tks(std::span<const NormalizedToken> fragment);
std::uint32_t compute_tks(std::span<const Symbol> fragment);

}  // namespace cloneblame::detect
