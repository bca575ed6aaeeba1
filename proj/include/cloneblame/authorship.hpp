#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "cloneblame/blame.hpp"
#include "cloneblame/detector.hpp"

namespace cloneblame::authorship {

using blame::BlameMap;
using detect::CloneInstance;
using detect::CloneSet;
using lexer::FileId;

struct FilePartition {
    FileId file_id = 0;
    std::vector<std::uint8_t> clone;  // clone[line - 1] != 0 for clone lines

    std::uint32_t line_count() const { return static_cast<std::uint32_t>(clone.size()); }
    std::uint32_t clone_line_count() const;
    bool is_clone(std::uint32_t line) const { return clone.at(line - 1) != 0; }
    std::vector<std::uint32_t> clone_lines() const;
    std::vector<std::uint32_t> nonclone_lines() const;
};

struct LinePartition {
    std::vector<FilePartition> files;  // ordered by file id
    std::uint64_t total_lines = 0;
    std::uint64_t clone_lines = 0;
    std::uint64_t nonclone_lines = 0;

    const FilePartition* find(FileId id) const;
};

/// A line is a clone line when at least one instance span covers it. Throws
/// IntegrityError for spans past the end of a file or unknown files.
LinePartition partition_lines(std::span<const CloneSet> clone_sets,
                              const std::map<FileId, std::uint32_t>& line_counts);

struct AuthorContribution {
    std::string author;
    std::uint64_t clone_lines = 0;
    std::uint64_t nonclone_lines = 0;

    std::uint64_t total() const { return clone_lines + nonclone_lines; }
    friend bool operator==(const AuthorContribution&, const AuthorContribution&) = default;
};

/// Per-author line counts, sorted by total descending then name ascending.
/// Throws IntegrityError when a counted line has no blame record.
std::vector<AuthorContribution> author_contributions(const LinePartition& partition, const BlameMap& blame);

enum class TiePolicy { Deterministic, Random };

/// Resolves equal-count leaders: lexicographically least name, or a uniform
/// draw from a seeded generator.
class TieBreaker {
public:
    static TieBreaker deterministic() { return TieBreaker(); }
    static TieBreaker seeded(std::uint64_t seed) { return TieBreaker(seed); }

    TiePolicy policy() const { return rng_ ? TiePolicy::Random : TiePolicy::Deterministic; }

    /// `candidates` must be sorted ascending and non-empty.
    const std::string& pick(std::span<const std::string> candidates);

private:
    TieBreaker() = default;
    explicit TieBreaker(std::uint64_t seed) : rng_(std::mt19937_64(seed)) {}

    std::optional<std::mt19937_64> rng_;
};

struct LeaderLabel {
    CloneInstance instance;
    std::string leader;
    std::uint32_t leader_line_count = 0;
    std::uint32_t distinct_authors = 0;
    bool tie = false;

    friend bool operator==(const LeaderLabel&, const LeaderLabel&) = default;
};

LeaderLabel snippet_leader(const CloneInstance& instance, const BlameMap& blame, TieBreaker& ties);

/// Leaders for every instance of every set (outer index follows `clone_sets`).
/// Line counting runs in parallel; ties are resolved afterwards in set order so
/// a seeded tie breaker gives reproducible draws.
std::vector<std::vector<LeaderLabel>> compute_leaders(std::span<const CloneSet> clone_sets, const BlameMap& blame,
                                                      TieBreaker& ties);

enum class CloneSetKind { SingleLeader, MultiLeader };

const char* to_string(CloneSetKind kind);

struct CloneSetClass {
    std::uint32_t clone_set_id = 0;
    CloneSetKind kind = CloneSetKind::SingleLeader;
    std::uint32_t distinct_leader_count = 0;
    bool purely_single_author = false;

    friend bool operator==(const CloneSetClass&, const CloneSetClass&) = default;
};

struct Classification {
    std::vector<CloneSetClass> classes;                        // same order as the clone sets
    std::map<std::uint32_t, std::uint32_t> leader_distribution;  // distinct leaders -> set count
};

Classification classify_clone_sets(std::span<const CloneSet> clone_sets,
                                   std::span<const std::vector<LeaderLabel>> leaders, const BlameMap& blame);

}  // namespace cloneblame::authorship
