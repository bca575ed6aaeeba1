#include "cloneblame/blame.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <optional>

#include "cloneblame/parallel.hpp"
#include "cloneblame/process.hpp"

namespace cloneblame::blame {

namespace {

bool is_hex(std::string_view s) {
    return std::all_of(s.begin(), s.end(), [](char c) {
        return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'f') || (c >= 'A' && c <= 'F');
    });
}

template <typename Int>
std::optional<Int> parse_int(std::string_view s) {
    Int value{};
    const auto* end = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(s.data(), end, value);
    if (ec != std::errc() || ptr != end) {
        return std::nullopt;
    }
    return value;
}

std::vector<std::string_view> split_spaces(std::string_view s) {
    std::vector<std::string_view> parts;
    std::size_t i = 0;
    while (i < s.size()) {
        const auto j = s.find(' ', i);
        const auto stop = j == std::string_view::npos ? s.size() : j;
        if (stop > i) {
            parts.push_back(s.substr(i, stop - i));
        }
        i = stop + 1;
    }
    return parts;
}

// "<sha> <orig-line> <final-line> [<group-size>]"
std::optional<std::pair<std::string, std::uint32_t>> parse_group_header(std::string_view line) {
    const auto parts = split_spaces(line);
    if (parts.size() < 3 || parts.size() > 4) {
        return std::nullopt;
    }
    if ((parts[0].size() != 40 && parts[0].size() != 64) || !is_hex(parts[0])) {
        return std::nullopt;
    }
    for (std::size_t k = 1; k < parts.size(); ++k) {
        if (!parse_int<std::uint32_t>(parts[k])) {
            return std::nullopt;
        }
    }
    return std::make_pair(std::string(parts[0]), *parse_int<std::uint32_t>(parts[2]));
}

}  // namespace

std::vector<LineAuthorship> parse_line_porcelain(std::string_view text, FileId file_id) {
    std::vector<LineAuthorship> records;
    std::optional<LineAuthorship> current;
    bool seen_author = false;
    std::size_t pos = 0;
    std::size_t line_no = 0;

    while (pos < text.size()) {
        auto nl = text.find('\n', pos);
        if (nl == std::string_view::npos) {
            nl = text.size();
        }
        std::string_view line = text.substr(pos, nl - pos);
        pos = nl + 1;
        ++line_no;

        if (!current) {
            if (line.empty()) {
                continue;
            }
            auto header = parse_group_header(line);
            if (!header) {
                throw ParseError("porcelain line " + std::to_string(line_no) + ": expected commit header");
            }
            current = LineAuthorship{file_id, header->second, {}, {}, std::move(header->first), 0};
            seen_author = false;
            continue;
        }
        if (line.starts_with('\t')) {
            if (!seen_author) {
                throw ParseError("porcelain line " + std::to_string(line_no) + ": line group without author");
            }
            if (current->author.empty()) {
                current->author = "(no author)";
            }
            records.push_back(std::move(*current));
            current.reset();
            continue;
        }
        const auto space = line.find(' ');
        const auto key = line.substr(0, space);
        const auto value = space == std::string_view::npos ? std::string_view{} : line.substr(space + 1);
        if (key == "author") {
            current->author = std::string(value);
            seen_author = true;
        } else if (key == "author-mail") {
            current->author_mail = std::string(value);
        } else if (key == "author-time") {
            current->author_time = parse_int<std::int64_t>(value).value_or(0);
        }
    }
    if (current) {
        throw ParseError("porcelain output ends inside a line group");
    }
    std::stable_sort(records.begin(), records.end(),
                     [](const LineAuthorship& a, const LineAuthorship& b) { return a.line < b.line; });
    for (std::size_t i = 0; i < records.size(); ++i) {
        if (records[i].line != i + 1) {
            throw ParseError("porcelain output does not cover lines 1.." + std::to_string(records.size()));
        }
    }
    return records;
}

std::vector<LineAuthorship> blame_file(const std::string& repo, const std::string& path, FileId file_id) {
    const auto result = run_git(repo, {"blame", "--line-porcelain", "HEAD", "--", path});
    if (result.exit_code != 0) {
        auto message = result.err;
        while (!message.empty() && (message.back() == '\n' || message.back() == '\r')) {
            message.pop_back();
        }
        throw BlameError("git blame failed for " + path + ": " + message);
    }
    try {
        return parse_line_porcelain(result.out, file_id);
    } catch (const ParseError& e) {
        throw BlameError("cannot parse blame of " + path + ": " + e.what());
    }
}

ProjectBlame blame_project(const std::string& repo, const std::vector<std::string>& paths, int jobs) {
    const auto count = static_cast<std::int64_t>(paths.size());
    std::vector<std::vector<LineAuthorship>> results(paths.size());
    std::vector<std::string> errors(paths.size());
    std::vector<char> failed(paths.size(), 0);
    std::string fatal;

    const int workers = worker_count(jobs);
#pragma omp parallel for schedule(dynamic, 1) num_threads(workers)
    for (std::int64_t i = 0; i < count; ++i) {
        try {
            results[i] = blame_file(repo, paths[i], static_cast<FileId>(i));
        } catch (const BlameError& e) {
            failed[i] = 1;
            errors[i] = e.what();
        } catch (const ConfigError& e) {
#pragma omp critical(cloneblame_blame_fatal)
            fatal = e.what();
            failed[i] = 2;
        } catch (const std::exception& e) {
            failed[i] = 1;
            errors[i] = e.what();
        }
    }
    if (!fatal.empty()) {
        throw ConfigError(fatal);
    }

    ProjectBlame project;
    for (std::size_t i = 0; i < paths.size(); ++i) {
        if (failed[i]) {
            project.skipped.push_back({paths[i], errors[i]});
        } else {
            project.files.emplace(static_cast<FileId>(i), std::move(results[i]));
        }
    }
    return project;
}

bool is_git_work_tree(const std::string& repo) {
    const auto result = run_git(repo, {"rev-parse", "--is-inside-work-tree"});
    return result.exit_code == 0 && result.out.starts_with("true");
}

std::string head_commit(const std::string& repo) {
    const auto result = run_git(repo, {"rev-parse", "--verify", "--quiet", "HEAD"});
    if (result.exit_code != 0) {
        return {};
    }
    auto out = result.out;
    while (!out.empty() && (out.back() == '\n' || out.back() == '\r')) {
        out.pop_back();
    }
    return out;
}

}  // namespace cloneblame::blame
