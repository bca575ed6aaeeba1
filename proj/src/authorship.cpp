#include "cloneblame/authorship.hpp"

#include <algorithm>
#include <set>

#include "cloneblame/errors.hpp"

namespace cloneblame::authorship {

namespace {

const std::vector<blame::LineAuthorship>& file_blame(const BlameMap& blame, FileId file_id) {
    const auto it = blame.find(file_id);
    if (it == blame.end()) {
        throw IntegrityError("no blame data for file id " + std::to_string(file_id));
    }
    return it->second;
}

struct LeaderCount {
    std::vector<std::string> top;  // authors sharing the maximum, ascending
    std::uint32_t top_count = 0;
    std::uint32_t distinct = 0;
};

LeaderCount count_leader(const CloneInstance& instance, const BlameMap& blame) {
    const auto& lines = file_blame(blame, instance.file_id);
    if (instance.begin_line < 1 || instance.end_line > lines.size() || instance.begin_line > instance.end_line) {
        throw IntegrityError("clone span " + std::to_string(instance.begin_line) + "-" +
                             std::to_string(instance.end_line) + " outside blamed file");
    }
    std::map<std::string, std::uint32_t> counts;
    for (std::uint32_t line = instance.begin_line; line <= instance.end_line; ++line) {
        ++counts[lines[line - 1].author];
    }
    LeaderCount result;
    result.distinct = static_cast<std::uint32_t>(counts.size());
    for (const auto& [author, n] : counts) {
        if (n > result.top_count) {
            result.top_count = n;
            result.top.clear();
        }
        if (n == result.top_count) {
            result.top.push_back(author);
        }
    }
    return result;
}

LeaderLabel resolve(const CloneInstance& instance, const LeaderCount& count, TieBreaker& ties) {
    LeaderLabel label;
    label.instance = instance;
    label.leader_line_count = count.top_count;
    label.distinct_authors = count.distinct;
    label.tie = count.top.size() > 1;
    label.leader = label.tie ? ties.pick(count.top) : count.top.front();
    return label;
}

}  // namespace

std::uint32_t FilePartition::clone_line_count() const {
    return static_cast<std::uint32_t>(std::count(clone.begin(), clone.end(), std::uint8_t{1}));
}

std::vector<std::uint32_t> FilePartition::clone_lines() const {
    std::vector<std::uint32_t> out;
    for (std::size_t i = 0; i < clone.size(); ++i) {
        if (clone[i]) {
            out.push_back(static_cast<std::uint32_t>(i + 1));
        }
    }
    return out;
}

std::vector<std::uint32_t> FilePartition::nonclone_lines() const {
    std::vector<std::uint32_t> out;
    for (std::size_t i = 0; i < clone.size(); ++i) {
        if (!clone[i]) {
            out.push_back(static_cast<std::uint32_t>(i + 1));
        }
    }
    return out;
}

const FilePartition* LinePartition::find(FileId id) const {
    const auto it = std::lower_bound(files.begin(), files.end(), id,
                                     [](const FilePartition& f, FileId key) { return f.file_id < key; });
    return it != files.end() && it->file_id == id ? &*it : nullptr;
}

LinePartition partition_lines(std::span<const CloneSet> clone_sets, const std::map<FileId, std::uint32_t>& line_counts) {
    LinePartition partition;
    partition.files.reserve(line_counts.size());
    for (const auto& [id, count] : line_counts) {
        partition.files.push_back({id, std::vector<std::uint8_t>(count, 0)});
    }
    for (const auto& set : clone_sets) {
        for (const auto& inst : set.instances) {
            auto* file = const_cast<FilePartition*>(partition.find(inst.file_id));
            if (file == nullptr) {
                throw IntegrityError("clone instance in unknown file id " + std::to_string(inst.file_id));
            }
            if (inst.begin_line < 1 || inst.end_line > file->line_count() || inst.begin_line > inst.end_line) {
                throw IntegrityError("clone span " + std::to_string(inst.begin_line) + "-" +
                                     std::to_string(inst.end_line) + " exceeds file of " +
                                     std::to_string(file->line_count()) + " lines");
            }
            std::fill(file->clone.begin() + (inst.begin_line - 1), file->clone.begin() + inst.end_line,
                      std::uint8_t{1});
        }
    }
    for (const auto& f : partition.files) {
        const auto clone = f.clone_line_count();
        partition.total_lines += f.line_count();
        partition.clone_lines += clone;
        partition.nonclone_lines += f.line_count() - clone;
    }
    return partition;
}

std::vector<AuthorContribution> author_contributions(const LinePartition& partition, const BlameMap& blame) {
    std::map<std::string, AuthorContribution> by_author;
    for (const auto& file : partition.files) {
        const auto& lines = file_blame(blame, file.file_id);
        if (lines.size() < file.line_count()) {
            throw IntegrityError("blame covers " + std::to_string(lines.size()) + " of " +
                                 std::to_string(file.line_count()) + " lines in file id " +
                                 std::to_string(file.file_id));
        }
        for (std::uint32_t i = 0; i < file.line_count(); ++i) {
            auto& entry = by_author[lines[i].author];
            entry.author = lines[i].author;
            if (file.clone[i]) {
                ++entry.clone_lines;
            } else {
                ++entry.nonclone_lines;
            }
        }
    }
    std::vector<AuthorContribution> out;
    out.reserve(by_author.size());
    for (auto& [name, c] : by_author) {
        out.push_back(std::move(c));
    }
    std::stable_sort(out.begin(), out.end(),
                     [](const AuthorContribution& a, const AuthorContribution& b) { return a.total() > b.total(); });
    return out;
}

const std::string& TieBreaker::pick(std::span<const std::string> candidates) {
    if (candidates.empty()) {
        throw std::invalid_argument("TieBreaker::pick: no candidates");
    }
    if (!rng_) {
        return candidates.front();
    }
    std::uniform_int_distribution<std::size_t> dist(0, candidates.size() - 1);
    return candidates[dist(*rng_)];
}

LeaderLabel snippet_leader(const CloneInstance& instance, const BlameMap& blame, TieBreaker& ties) {
    return resolve(instance, count_leader(instance, blame), ties);
}

std::vector<std::vector<LeaderLabel>> compute_leaders(std::span<const CloneSet> clone_sets, const BlameMap& blame,
                                                      TieBreaker& ties) {
    std::vector<std::vector<LeaderCount>> counts(clone_sets.size());
    const auto n = static_cast<std::int64_t>(clone_sets.size());
    std::string failure;
#pragma omp parallel for schedule(dynamic, 8)
    for (std::int64_t s = 0; s < n; ++s) {
        try {
            counts[s].reserve(clone_sets[s].instances.size());
            for (const auto& inst : clone_sets[s].instances) {
                counts[s].push_back(count_leader(inst, blame));
            }
        } catch (const std::exception& e) {
#pragma omp critical(cloneblame_leader_failure)
            failure = e.what();
        }
    }
    if (!failure.empty()) {
        throw IntegrityError(failure);
    }
    std::vector<std::vector<LeaderLabel>> leaders(clone_sets.size());
    for (std::size_t s = 0; s < clone_sets.size(); ++s) {
        leaders[s].reserve(counts[s].size());
        for (std::size_t i = 0; i < counts[s].size(); ++i) {
            leaders[s].push_back(resolve(clone_sets[s].instances[i], counts[s][i], ties));
        }
    }
    return leaders;
}

const char* to_string(CloneSetKind kind) {
    return kind == CloneSetKind::SingleLeader ? "single-leader" : "multi-leader";
}

Classification classify_clone_sets(std::span<const CloneSet> clone_sets,
                                   std::span<const std::vector<LeaderLabel>> leaders, const BlameMap& blame) {
    if (leaders.size() != clone_sets.size()) {
        throw std::invalid_argument("classify_clone_sets: one leader list per clone set required");
    }
    Classification result;
    result.classes.reserve(clone_sets.size());
    for (std::size_t s = 0; s < clone_sets.size(); ++s) {
        std::set<std::string> distinct_leaders;
        for (const auto& label : leaders[s]) {
            distinct_leaders.insert(label.leader);
        }
        std::set<std::string> line_authors;
        for (const auto& inst : clone_sets[s].instances) {
            const auto& lines = file_blame(blame, inst.file_id);
            for (std::uint32_t line = inst.begin_line; line <= inst.end_line && line_authors.size() < 2; ++line) {
                line_authors.insert(lines.at(line - 1).author);
            }
        }
        CloneSetClass c;
        c.clone_set_id = clone_sets[s].id;
        c.distinct_leader_count = static_cast<std::uint32_t>(distinct_leaders.size());
        c.kind = c.distinct_leader_count == 1 ? CloneSetKind::SingleLeader : CloneSetKind::MultiLeader;
        c.purely_single_author = line_authors.size() == 1;
        ++result.leader_distribution[c.distinct_leader_count];
        result.classes.push_back(c);
    }
    return result;
}

}  // namespace cloneblame::authorship
