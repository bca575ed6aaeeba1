#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cloneblame/authorship.hpp"
#include "cloneblame/blame.hpp"
#include "cloneblame/detector.hpp"
#include "cloneblame/metrics.hpp"

namespace cloneblame::report {

inline constexpr std::string_view kSchema = "clone-blame/1";

std::string_view tool_version();

struct InstanceRecord {
    std::string file;
    std::uint32_t begin_line = 0;
    std::uint32_t end_line = 0;
    std::uint32_t begin_token = 0;
    std::uint32_t end_token = 0;
    std::string leader;
    std::uint32_t leader_lines = 0;
    std::uint32_t distinct_authors = 0;
    bool tie = false;

    friend bool operator==(const InstanceRecord&, const InstanceRecord&) = default;
};

struct CloneSetRecord {
    std::uint32_t id = 0;
    std::uint32_t token_length = 0;
    double mean_length_loc = 0.0;
    authorship::CloneSetKind kind = authorship::CloneSetKind::SingleLeader;
    std::uint32_t distinct_leaders = 0;
    bool purely_single_author = false;
    std::vector<InstanceRecord> instances;

    std::vector<std::string> leaders() const;  // per instance, in instance order

    friend bool operator==(const CloneSetRecord&, const CloneSetRecord&) = default;
};

struct ProjectReport {
    std::string schema{kSchema};
    std::string tool_version;
    std::string timestamp;  // UTC, ISO 8601
    std::string repo;
    std::string head_commit;
    detect::DetectorParams params;
    authorship::TiePolicy tie_policy = authorship::TiePolicy::Deterministic;
    std::optional<std::uint64_t> seed;

    std::vector<std::string> files;  // analyzed, repo-relative
    std::vector<blame::SkippedFile> skipped;
    std::vector<std::string> warnings;

    stats::ProjectMetrics metrics;
    std::vector<CloneSetRecord> clone_sets;
    std::vector<authorship::AuthorContribution> authors;

    friend bool operator==(const ProjectReport&, const ProjectReport&) = default;
};

std::string to_json(const ProjectReport& report);

/// Throws ParseError for malformed documents or an unknown schema.
ProjectReport report_from_json(std::string_view text);

/// Columns: set_id, size, mean_length_loc, token_length, kind, leaders
/// (instance leaders joined by ';').
std::string clone_sets_csv(const ProjectReport& report);

/// Columns: author, clone_lines, nonclone_lines.
std::string authors_csv(const ProjectReport& report);

/// Quotes a CSV field when it holds a comma, quote or line break.
std::string csv_field(std::string_view value);

const char* to_string(authorship::TiePolicy policy);

}  // namespace cloneblame::report
