#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>

#include "cloneblame/authorship.hpp"
#include "cloneblame/detector.hpp"
#include "cloneblame/stats.hpp"

namespace cloneblame::stats {

inline constexpr double kSignificanceLevel = 0.05;

/// Single- vs multi-leader comparison of one per-set quantity (length or size).
/// Sample a is single-leader sets, sample b multi-leader sets.
struct GroupComparison {
    UTestResult test;
    Summary single_leader;
    Summary multi_leader;

    /// Significant at 5% with the multi-leader mean larger.
    bool multi_leader_greater() const {
        return test.p_value < kSignificanceLevel && test.direction == Direction::BGreater;
    }

    friend bool operator==(const GroupComparison&, const GroupComparison&) = default;
};

/// Project-level clone and authorship metrics.
struct ProjectMetrics {
    std::uint64_t total_lines = 0;
    std::uint64_t clone_lines = 0;
    std::uint64_t nonclone_lines = 0;
    double clone_ratio = 0.0;               // clone / total
    double nonclone_ratio = 0.0;            // non-clone / total
    double clone_to_nonclone_ratio = 0.0;   // clone / non-clone

    std::uint64_t clone_set_count = 0;
    std::optional<Summary> clone_length;  // per-set mean instance length (LOC)
    std::optional<Summary> set_size;

    std::uint64_t authors_total = 0;
    std::uint64_t authors_clone = 0;
    std::uint64_t authors_nonclone = 0;

    /// Authors' clone lines regressed on their non-clone lines.
    std::optional<RegressionResult> regression;

    std::uint64_t single_leader_count = 0;
    std::uint64_t multi_leader_count = 0;
    double single_leader_ratio = 0.0;
    double multi_leader_ratio = 0.0;
    std::uint64_t purely_single_author_count = 0;
    double purely_single_author_ratio = 0.0;
    std::map<std::uint32_t, std::uint32_t> leader_distribution;
    std::uint64_t tied_instances = 0;

    std::optional<GroupComparison> length_test;
    std::optional<GroupComparison> size_test;

    bool regression_significant() const {
        return regression && regression->p_value && *regression->p_value < kSignificanceLevel;
    }
    bool multi_leader_longer() const { return length_test && length_test->multi_leader_greater(); }
    bool multi_leader_larger() const { return size_test && size_test->multi_leader_greater(); }

    friend bool operator==(const ProjectMetrics&, const ProjectMetrics&) = default;
};

/// Computes every project metric from the pipeline's intermediate results.
/// Tests that lack data (no sets, one group empty, fewer than two authors)
/// are left empty.
ProjectMetrics project_summary(const authorship::LinePartition& partition,
                               std::span<const authorship::AuthorContribution> contributions,
                               const authorship::Classification& classification,
                               std::span<const detect::CloneSet> clone_sets,
                               std::span<const std::vector<authorship::LeaderLabel>> leaders);

}  // namespace cloneblame::stats
