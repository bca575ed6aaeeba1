#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cloneblame/report.hpp"

namespace cloneblame::report {

enum ExitCode : int { kExitSuccess = 0, kExitPartial = 1, kExitFatal = 2 };

/// `.java` files whose repo-relative path has no case-insensitive "test",
/// sorted. `.git` is never entered. Throws ConfigError when the root cannot
/// be listed.
std::vector<std::string> select_target_files(const std::string& repo_root);

/// Same filter applied to an explicit path list.
std::vector<std::string> filter_target_paths(std::vector<std::string> paths);

struct AnalyzeOptions {
    detect::DetectorParams params;
    authorship::TiePolicy tie_policy = authorship::TiePolicy::Deterministic;
    std::uint64_t seed = 0;
    int jobs = 0;             // 0: OpenMP default
    std::string out_dir;      // empty: write nothing
    bool plots = false;
};

/// Wall-clock seconds spent in each stage of the last run.
struct StageTimings {
    double select = 0.0;
    double blame = 0.0;
    double tokenize = 0.0;
    double detect = 0.0;
    double join = 0.0;
    double write = 0.0;
};

struct AnalysisResult {
    ProjectReport report;
    StageTimings timings;

    int exit_code() const { return report.skipped.empty() ? kExitSuccess : kExitPartial; }
};

/// Select, blame, tokenize, detect, join and summarize one repository. When
/// `out_dir` is set, writes report.json, clone_sets.csv, authors.csv and, with
/// `plots`, SVG box plots. Throws ConfigError when the path is not a git work
/// tree or git cannot run.
AnalysisResult analyze_repo(const std::string& repo, const AnalyzeOptions& options);

/// Writes the report files into `dir` (created if missing).
void write_outputs(const ProjectReport& report, const std::string& dir, bool plots);

struct MetricRange {
    double min = 0.0;
    double max = 0.0;
    double mean = 0.0;
    std::size_t count = 0;

    friend bool operator==(const MetricRange&, const MetricRange&) = default;
};

struct CorpusEntry {
    std::string repo;
    std::string out_dir;  // empty when nothing was written
    bool ok = false;
    std::string error;
    int exit_code = kExitFatal;
    std::optional<stats::ProjectMetrics> metrics;
};

struct CorpusSummary {
    std::vector<CorpusEntry> projects;
    std::size_t analyzed = 0;
    std::size_t failed = 0;

    MetricRange clone_ratio;
    MetricRange clone_to_nonclone_ratio;
    MetricRange single_leader_ratio;
    MetricRange multi_leader_ratio;
    MetricRange purely_single_author_ratio;
    MetricRange regression_slope;
    MetricRange regression_r_squared;

    std::size_t regression_significant = 0;  // '*'
    std::size_t multi_leader_longer = 0;     // '+'
    std::size_t multi_leader_larger = 0;     // '@'
};

/// Aggregates already computed per-project metrics.
CorpusSummary summarize_corpus(std::vector<CorpusEntry> entries);

/// Analyzes each repository into `<out_dir>/<NNN>-<name>`, records failures
/// and keeps going, then writes corpus_summary.json when `out_dir` is set.
CorpusSummary analyze_corpus(const std::vector<std::string>& repos, const AnalyzeOptions& options);

std::string corpus_summary_json(const CorpusSummary& summary);

/// Repository paths from a list file: one per line, blank lines and '#'
/// comments ignored, relative paths resolved against the list's directory.
std::vector<std::string> read_repo_list(const std::string& list_file);

}  // namespace cloneblame::report
