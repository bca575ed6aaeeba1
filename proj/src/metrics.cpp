#include "cloneblame/metrics.hpp"

#include <stdexcept>
#include <utility>
#include <vector>

#include "cloneblame/errors.hpp"

namespace cloneblame::stats {

namespace {

double ratio(double num, double den) { return den > 0.0 ? num / den : 0.0; }

std::optional<GroupComparison> compare_groups(const std::vector<double>& single, const std::vector<double>& multi) {
    if (single.empty() || multi.empty()) {
        return std::nullopt;
    }
    GroupComparison g;
    g.test = mann_whitney_u(single, multi, UTestMode::Auto);
    g.single_leader = summarize(single);
    g.multi_leader = summarize(multi);
    return g;
}

}  // namespace

ProjectMetrics project_summary(const authorship::LinePartition& partition,
                               std::span<const authorship::AuthorContribution> contributions,
                               const authorship::Classification& classification,
                               std::span<const detect::CloneSet> clone_sets,
                               std::span<const std::vector<authorship::LeaderLabel>> leaders) {
    if (classification.classes.size() != clone_sets.size()) {
        throw std::invalid_argument("project_summary: classification does not match clone sets");
    }
    ProjectMetrics m;
    m.total_lines = partition.total_lines;
    m.clone_lines = partition.clone_lines;
    m.nonclone_lines = partition.nonclone_lines;
    m.clone_ratio = ratio(static_cast<double>(m.clone_lines), static_cast<double>(m.total_lines));
    m.nonclone_ratio = ratio(static_cast<double>(m.nonclone_lines), static_cast<double>(m.total_lines));
    m.clone_to_nonclone_ratio = ratio(static_cast<double>(m.clone_lines), static_cast<double>(m.nonclone_lines));

    m.clone_set_count = clone_sets.size();
    std::vector<double> lengths;
    std::vector<double> sizes;
    lengths.reserve(clone_sets.size());
    sizes.reserve(clone_sets.size());
    for (const auto& set : clone_sets) {
        lengths.push_back(set.mean_length_loc());
        sizes.push_back(static_cast<double>(set.size()));
    }
    if (!clone_sets.empty()) {
        m.clone_length = summarize(lengths);
        m.set_size = summarize(sizes);
    }

    std::vector<std::pair<double, double>> points;
    for (const auto& c : contributions) {
        if (c.total() > 0) {
            ++m.authors_total;
        }
        if (c.clone_lines > 0) {
            ++m.authors_clone;
        }
        if (c.nonclone_lines > 0) {
            ++m.authors_nonclone;
        }
        points.emplace_back(static_cast<double>(c.nonclone_lines), static_cast<double>(c.clone_lines));
    }
    try {
        m.regression = linear_regression(points);
    } catch (const InsufficientDataError&) {
    } catch (const DegenerateInputError&) {
    }

    std::vector<double> single_lengths;
    std::vector<double> multi_lengths;
    std::vector<double> single_sizes;
    std::vector<double> multi_sizes;
    for (std::size_t s = 0; s < clone_sets.size(); ++s) {
        const auto& cls = classification.classes[s];
        const bool single = cls.kind == authorship::CloneSetKind::SingleLeader;
        if (single) {
            ++m.single_leader_count;
            single_lengths.push_back(lengths[s]);
            single_sizes.push_back(sizes[s]);
        } else {
            ++m.multi_leader_count;
            multi_lengths.push_back(lengths[s]);
            multi_sizes.push_back(sizes[s]);
        }
        if (cls.purely_single_author) {
            ++m.purely_single_author_count;
        }
    }
    for (const auto& per_set : leaders) {
        for (const auto& label : per_set) {
            if (label.tie) {
                ++m.tied_instances;
            }
        }
    }
    const auto set_count = static_cast<double>(m.clone_set_count);
    m.single_leader_ratio = ratio(static_cast<double>(m.single_leader_count), set_count);
    m.multi_leader_ratio = ratio(static_cast<double>(m.multi_leader_count), set_count);
    m.purely_single_author_ratio = ratio(static_cast<double>(m.purely_single_author_count), set_count);
    m.leader_distribution = classification.leader_distribution;
    m.length_test = compare_groups(single_lengths, multi_lengths);
    m.size_test = compare_groups(single_sizes, multi_sizes);
    return m;
}

}  // namespace cloneblame::stats
