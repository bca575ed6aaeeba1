#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "cloneblame/errors.hpp"
#include "cloneblame/lexer.hpp"

namespace cloneblame::blame {

using lexer::FileId;

struct LineAuthorship {
    FileId file_id = 0;
    std::uint32_t line = 0;
    std::string author;
    std::string author_mail;  // diagnostics only; identity is the name
    std::string commit;
    std::int64_t author_time = 0;

    friend bool operator==(const LineAuthorship&, const LineAuthorship&) = default;
};

/// Per-file failure (untracked, unreadable, unparsable output). The file is
/// skipped; the rest of the project is still analyzed.
class BlameError : public Error {
public:
    using Error::Error;
};

/// Parses `git blame --line-porcelain` output. Records come back ordered by
/// final line number; throws ParseError on malformed input.
std::vector<LineAuthorship> parse_line_porcelain(std::string_view text, FileId file_id = 0);

/// Blames one file at HEAD. Throws BlameError for per-file problems and
/// ConfigError when git itself cannot be run.
std::vector<LineAuthorship> blame_file(const std::string& repo, const std::string& path, FileId file_id = 0);

struct SkippedFile {
    std::string path;
    std::string reason;

    friend bool operator==(const SkippedFile&, const SkippedFile&) = default;
};

using BlameMap = std::map<FileId, std::vector<LineAuthorship>>;

struct ProjectBlame {
    BlameMap files;  // keyed by index into the input path list
    std::vector<SkippedFile> skipped;
};

/// Blames every path (file id = index in `paths`) with up to `jobs` parallel
/// git processes. Only ConfigError propagates.
ProjectBlame blame_project(const std::string& repo, const std::vector<std::string>& paths, int jobs = 0);

bool is_git_work_tree(const std::string& repo);

/// Full hash of HEAD; empty for a repository without commits.
std::string head_commit(const std::string& repo);

}  // namespace cloneblame::blame
