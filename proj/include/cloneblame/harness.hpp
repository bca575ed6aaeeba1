#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "cloneblame/authorship.hpp"
#include "cloneblame/detector.hpp"
#include "cloneblame/report.hpp"

namespace cloneblame::harness {

// Content strings hold '\n'-terminated lines.
struct CreateFile {
    std::string path;
    std::string author;
    std::string content;

    friend bool operator==(const CreateFile&, const CreateFile&) = default;
};

/// Replaces lines [begin, end] with `content`. end = begin - 1 inserts
/// before line `begin` (begin may be line_count + 1 to append).
struct EditLines {
    std::string path;
    std::string author;
    std::uint32_t begin = 1;
    std::uint32_t end = 0;
    std::string content;

    friend bool operator==(const EditLines&, const EditLines&) = default;
};

/// Copies src lines [begin, end] to before `insert_line` of dst. A non-empty
/// `rename_suffix` is appended to every identifier of the copied lines.
struct CopySnippet {
    std::string src;
    std::uint32_t begin = 1;
    std::uint32_t end = 1;
    std::string dst;
    std::uint32_t insert_line = 1;
    std::string author;
    std::string rename_suffix;

    friend bool operator==(const CopySnippet&, const CopySnippet&) = default;
};

using Event = std::variant<CreateFile, EditLines, CopySnippet>;

struct HistoryScript {
    std::vector<Event> events;

    friend bool operator==(const HistoryScript&, const HistoryScript&) = default;
};

/// One event per line, tab separated, with \\, \n, \r and \t escaped:
///   create <path> <author> <content>
///   edit   <path> <author> <begin> <end> <content>
///   copy   <src> <begin> <end> <dst> <insert_line> <author> [<rename_suffix>]
/// Blank lines and lines starting with '#' are ignored by the parser.
std::string serialize_script(const HistoryScript& script);
HistoryScript parse_script(std::string_view text);  // throws ParseError

/// Appends `suffix` to every identifier token of a single source line.
std::string rename_identifiers(std::string_view line, std::string_view suffix);

/// Snippet lines carry this comment marker followed by a family number; a
/// maximal run of lines with one family number is one occurrence.
inline constexpr std::string_view kFamilyMarker = "//~";

/// Appended to every written line (with a serial number) so no two lines of
/// a file are ever equal and blame has exactly one alignment per commit.
inline constexpr std::string_view kLineTag = " //#";

struct ExpectedInstance {
    std::string file;
    std::uint32_t begin_line = 0;
    std::uint32_t end_line = 0;
    std::string leader;
    std::uint32_t leader_lines = 0;
    bool tie = false;

    friend bool operator==(const ExpectedInstance&, const ExpectedInstance&) = default;
};

struct ExpectedCloneSet {
    std::uint32_t token_length = 0;
    std::vector<ExpectedInstance> instances;  // by file, then line
    authorship::CloneSetKind kind = authorship::CloneSetKind::SingleLeader;
    bool purely_single_author = false;

    friend bool operator==(const ExpectedCloneSet&, const ExpectedCloneSet&) = default;
};

/// A group of marked occurrences with one normalized sequence, whether or
/// not it passes the detector thresholds.
struct FamilyTruth {
    std::vector<std::uint32_t> markers;
    std::size_t occurrences = 0;
    std::uint32_t token_length = 0;
    double rnr = 0.0;
    std::uint32_t tks = 0;
    bool reported = false;
};

struct GroundTruth {
    detect::DetectorParams params;
    std::vector<std::string> files;  // target files, sorted
    std::map<std::string, std::vector<std::string>> line_authors;  // every file, per line
    std::vector<ExpectedCloneSet> clone_sets;
    std::vector<FamilyTruth> families;
    std::vector<authorship::AuthorContribution> authors;  // sorted like author_contributions
    std::uint64_t total_lines = 0;
    std::uint64_t clone_lines = 0;
    std::uint64_t nonclone_lines = 0;
};

struct GenerateOptions {
    detect::DetectorParams params;
    bool unique_line_tags = true;
    std::int64_t start_time = 1577836800;  // first commit, seconds since epoch
    std::int64_t time_step = 60;
};

/// Final file contents after replaying the script (tags included).
std::map<std::string, std::string> replay_contents(const HistoryScript& script, const GenerateOptions& options = {});

/// Ground truth from the script alone. Throws std::invalid_argument for
/// scripts that reference missing files or bad line ranges, and for marked
/// families whose occurrences disagree or share a neighbouring token.
GroundTruth derive_truth(const HistoryScript& script, const GenerateOptions& options = {});

struct GeneratedRepo {
    std::string path;
    GroundTruth truth;
};

/// Builds a git repository in `workdir` (created; must be empty) with one
/// commit per event authored by the event's author.
GeneratedRepo generate_repo(const HistoryScript& script, const std::string& workdir,
                            const GenerateOptions& options = {});

/// Differences between a report and the truth; empty when they agree.
std::vector<std::string> verify(const std::string& repo, const GroundTruth& truth,
                                const report::ProjectReport& report);

struct ScriptSpec {
    std::uint32_t min_authors = 2;
    std::uint32_t max_authors = 6;
    std::uint32_t min_files = 2;
    std::uint32_t max_files = 4;
    std::uint32_t min_members = 3;  // per created file
    std::uint32_t max_members = 6;
    double snippet_share = 0.45;    // chance a created member is a snippet
    std::uint32_t min_copies = 1;
    std::uint32_t max_copies = 10;
    std::uint32_t min_snippet_tokens = 40;
    std::uint32_t max_snippet_tokens = 120;
    std::uint32_t max_type2_edits = 6;
    std::uint32_t max_filler_edits = 6;
    std::uint32_t max_member_inserts = 2;
    bool utf8_author = false;
};

/// Random multi-author history: files of filler and snippet methods, copies
/// of snippets by other authors, identifier/literal edits inside copies and
/// edits of filler code. Deterministic in `seed`.
HistoryScript random_script(const ScriptSpec& spec, std::uint64_t seed);

}  // namespace cloneblame::harness
