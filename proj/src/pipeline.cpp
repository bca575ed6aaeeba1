#include "cloneblame/pipeline.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>

#include "cloneblame/boxplot.hpp"
#include "cloneblame/errors.hpp"
#include "cloneblame/parallel.hpp"
#include "cloneblame/process.hpp"

namespace cloneblame::report {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

bool is_target_path(std::string_view path) {
    if (path.size() < 5 || path.substr(path.size() - 5) != ".java") {
        return false;
    }
    std::string lower(path);
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return lower.find("test") == std::string::npos;
}

std::string utc_timestamp() {
    const std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error("cannot open " + path.string());
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) {
        throw Error("cannot read " + path.string());
    }
    return ss.str();
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << content;
    out.close();
    if (!out) {
        throw ConfigError("cannot write " + path.string());
    }
}

// Tracked files whose working-tree or index content differs from HEAD.
std::set<std::string> modified_paths(const std::string& repo) {
    const auto r = run_git(repo, {"diff", "--name-only", "-z", "HEAD", "--"});
    std::set<std::string> out;
    if (r.exit_code != 0) {
        return out;
    }
    std::size_t start = 0;
    while (start < r.out.size()) {
        const auto end = r.out.find('\0', start);
        const auto stop = end == std::string::npos ? r.out.size() : end;
        if (stop > start) {
            out.insert(r.out.substr(start, stop - start));
        }
        start = stop + 1;
    }
    return out;
}

struct LoadedFile {
    bool ok = false;
    std::string reason;
    lexer::TokenizeResult tokens;
};

MetricRange range_of(const std::vector<double>& values) {
    MetricRange r;
    r.count = values.size();
    if (values.empty()) {
        return r;
    }
    const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
    r.min = *lo;
    r.max = *hi;
    r.mean = stats::mean(values);
    // Summation error must not push the mean outside its own range.
    r.mean = std::clamp(r.mean, r.min, r.max);
    return r;
}

json range_json(const MetricRange& r) {
    return {{"min", r.min}, {"max", r.max}, {"mean", r.mean}, {"count", r.count}};
}

std::string directory_label(std::size_t index, const std::string& repo) {
    auto name = fs::path(repo).lexically_normal().filename().string();
    if (name.empty()) {
        name = fs::path(repo).lexically_normal().parent_path().filename().string();
    }
    for (auto& c : name) {
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '-' && c != '_' && c != '.') {
            c = '_';
        }
    }
    std::ostringstream label;
    label << std::setw(3) << std::setfill('0') << index << '-' << (name.empty() ? "repo" : name);
    return label.str();
}

}  // namespace

std::vector<std::string> filter_target_paths(std::vector<std::string> paths) {
    std::erase_if(paths, [](const std::string& p) { return !is_target_path(p); });
    std::sort(paths.begin(), paths.end());
    paths.erase(std::unique(paths.begin(), paths.end()), paths.end());
    return paths;
}

std::vector<std::string> select_target_files(const std::string& repo_root) {
    std::vector<std::string> out;
    const fs::path root(repo_root);
    try {
        for (auto it = fs::recursive_directory_iterator(root); it != fs::recursive_directory_iterator(); ++it) {
            if (it->is_directory() && it->path().filename() == ".git") {
                it.disable_recursion_pending();
                continue;
            }
            if (it->is_regular_file()) {
                out.push_back(it->path().lexically_relative(root).generic_string());
            }
        }
    } catch (const fs::filesystem_error& e) {
        throw ConfigError(std::string("cannot list repository files: ") + e.what());
    }
    return filter_target_paths(std::move(out));
}

AnalysisResult analyze_repo(const std::string& repo, const AnalyzeOptions& options) {
    options.params.validate();
    AnalysisResult result;
    auto& timings = result.timings;
    auto& report = result.report;

    std::error_code ec;
    if (!fs::is_directory(repo, ec)) {
        throw ConfigError("not a directory: " + repo);
    }
    if (!blame::is_git_work_tree(repo)) {
        throw ConfigError("not a git work tree: " + repo);
    }
    report.tool_version = std::string(tool_version());
    report.timestamp = utc_timestamp();
    report.repo = fs::weakly_canonical(fs::absolute(repo)).string();
    report.head_commit = blame::head_commit(repo);
    report.params = options.params;
    report.tie_policy = options.tie_policy;
    if (options.tie_policy == authorship::TiePolicy::Random) {
        report.seed = options.seed;
    }

    auto start = Clock::now();
    const auto paths = select_target_files(repo);
    const auto modified = modified_paths(repo);
    timings.select = seconds_since(start);
    if (paths.empty()) {
        report.warnings.push_back("no target files found");
    }

    start = Clock::now();
    auto project_blame = blame::blame_project(repo, paths, options.jobs);
    timings.blame = seconds_since(start);

    start = Clock::now();
    std::vector<LoadedFile> loaded(paths.size());
    const auto n = static_cast<std::int64_t>(paths.size());
#pragma omp parallel for schedule(dynamic, 4) num_threads(worker_count(options.jobs))
    for (std::int64_t i = 0; i < n; ++i) {
        auto& f = loaded[i];
        const auto id = static_cast<lexer::FileId>(i);
        const auto blamed = project_blame.files.find(id);
        if (blamed == project_blame.files.end()) {
            continue;  // already on the skip list
        }
        if (modified.count(paths[i]) != 0) {
            f.reason = "working tree differs from HEAD";
            continue;
        }
        try {
            const auto content = read_file(fs::path(repo) / paths[i]);
            const auto lines = lexer::count_lines(content);
            if (lines != blamed->second.size()) {
                f.reason = "file has " + std::to_string(lines) + " lines but blame reports " +
                           std::to_string(blamed->second.size());
                continue;
            }
            f.tokens = lexer::tokenize_file(paths[i], content, id);
            f.ok = true;
        } catch (const std::exception& e) {
            f.reason = e.what();
        }
    }

    std::vector<detect::TokenFile> token_files;
    std::map<lexer::FileId, std::uint32_t> line_counts;
    for (std::size_t i = 0; i < paths.size(); ++i) {
        const auto id = static_cast<lexer::FileId>(i);
        auto& f = loaded[i];
        if (!f.ok) {
            if (!f.reason.empty()) {
                project_blame.skipped.push_back({paths[i], f.reason});
                project_blame.files.erase(id);
            }
            continue;
        }
        for (const auto& w : f.tokens.warnings) {
            report.warnings.push_back(paths[i] + ":" + std::to_string(w.line) + ": " + w.message);
        }
        token_files.push_back(detect::make_token_file(id, f.tokens.tokens));
        line_counts[id] = f.tokens.line_count;
        report.files.push_back(paths[i]);
        f.tokens = {};
    }
    std::sort(project_blame.skipped.begin(), project_blame.skipped.end(),
              [](const blame::SkippedFile& a, const blame::SkippedFile& b) { return a.path < b.path; });
    report.skipped = project_blame.skipped;
    timings.tokenize = seconds_since(start);

    start = Clock::now();
    const auto sets = detect::detect_clone_sets(token_files, options.params);
    token_files.clear();
    timings.detect = seconds_since(start);

    start = Clock::now();
    const auto& blame_map = project_blame.files;
    const auto partition = authorship::partition_lines(sets, line_counts);
    report.authors = authorship::author_contributions(partition, blame_map);
    auto ties = options.tie_policy == authorship::TiePolicy::Random ? authorship::TieBreaker::seeded(options.seed)
                                                                     : authorship::TieBreaker::deterministic();
    const auto leaders = authorship::compute_leaders(sets, blame_map, ties);
    const auto classification = authorship::classify_clone_sets(sets, leaders, blame_map);
    report.metrics = stats::project_summary(partition, report.authors, classification, sets, leaders);

    report.clone_sets.reserve(sets.size());
    for (std::size_t s = 0; s < sets.size(); ++s) {
        CloneSetRecord rec;
        rec.id = sets[s].id;
        rec.token_length = sets[s].token_length;
        rec.mean_length_loc = sets[s].mean_length_loc();
        rec.kind = classification.classes[s].kind;
        rec.distinct_leaders = classification.classes[s].distinct_leader_count;
        rec.purely_single_author = classification.classes[s].purely_single_author;
        for (const auto& label : leaders[s]) {
            const auto& inst = label.instance;
            rec.instances.push_back({paths[inst.file_id], inst.begin_line, inst.end_line, inst.begin_token,
                                     inst.end_token, label.leader, label.leader_line_count, label.distinct_authors,
                                     label.tie});
        }
        report.clone_sets.push_back(std::move(rec));
    }
    timings.join = seconds_since(start);

    if (!options.out_dir.empty()) {
        start = Clock::now();
        write_outputs(report, options.out_dir, options.plots);
        timings.write = seconds_since(start);
    }
    return result;
}

void write_outputs(const ProjectReport& report, const std::string& dir, bool plots) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) {
        throw ConfigError("cannot create output directory " + dir + ": " + ec.message());
    }
    const fs::path out(dir);
    write_file(out / "report.json", to_json(report));
    write_file(out / "clone_sets.csv", clone_sets_csv(report));
    write_file(out / "authors.csv", authors_csv(report));
    if (!plots || report.clone_sets.empty()) {
        return;
    }
    BoxSeries length_all{"all", {}};
    BoxSeries length_single{"single-leader", {}};
    BoxSeries length_multi{"multi-leader", {}};
    BoxSeries size_all{"all", {}};
    BoxSeries size_single{"single-leader", {}};
    BoxSeries size_multi{"multi-leader", {}};
    std::vector<double> leader_counts;
    for (const auto& s : report.clone_sets) {
        const double size = static_cast<double>(s.instances.size());
        const bool single = s.kind == authorship::CloneSetKind::SingleLeader;
        length_all.values.push_back(s.mean_length_loc);
        size_all.values.push_back(size);
        (single ? length_single : length_multi).values.push_back(s.mean_length_loc);
        (single ? size_single : size_multi).values.push_back(size);
        leader_counts.push_back(static_cast<double>(s.distinct_leaders));
    }
    const std::vector<BoxSeries> lengths{length_all, length_single, length_multi};
    const std::vector<BoxSeries> sizes{size_all, size_single, size_multi};
    write_file(out / "clone_length.svg", emit_boxplot_svg(lengths, "Clone length (LOC)"));
    write_file(out / "clone_set_size.svg", emit_boxplot_svg(sizes, "Clone set size"));
    write_file(out / "leaders_per_set.svg", emit_boxplot_svg(leader_counts, "Distinct leaders per clone set"));
}

CorpusSummary summarize_corpus(std::vector<CorpusEntry> entries) {
    CorpusSummary summary;
    std::vector<double> clone_ratio;
    std::vector<double> clone_to_nonclone;
    std::vector<double> single;
    std::vector<double> multi;
    std::vector<double> purely;
    std::vector<double> slope;
    std::vector<double> r_squared;
    for (const auto& e : entries) {
        if (!e.ok || !e.metrics) {
            ++summary.failed;
            continue;
        }
        ++summary.analyzed;
        const auto& m = *e.metrics;
        clone_ratio.push_back(m.clone_ratio);
        clone_to_nonclone.push_back(m.clone_to_nonclone_ratio);
        if (m.clone_set_count > 0) {
            single.push_back(m.single_leader_ratio);
            multi.push_back(m.multi_leader_ratio);
            purely.push_back(m.purely_single_author_ratio);
        }
        if (m.regression) {
            slope.push_back(m.regression->slope);
            r_squared.push_back(m.regression->r_squared);
        }
        summary.regression_significant += m.regression_significant() ? 1 : 0;
        summary.multi_leader_longer += m.multi_leader_longer() ? 1 : 0;
        summary.multi_leader_larger += m.multi_leader_larger() ? 1 : 0;
    }
    summary.clone_ratio = range_of(clone_ratio);
    summary.clone_to_nonclone_ratio = range_of(clone_to_nonclone);
    summary.single_leader_ratio = range_of(single);
    summary.multi_leader_ratio = range_of(multi);
    summary.purely_single_author_ratio = range_of(purely);
    summary.regression_slope = range_of(slope);
    summary.regression_r_squared = range_of(r_squared);
    summary.projects = std::move(entries);
    return summary;
}

CorpusSummary analyze_corpus(const std::vector<std::string>& repos, const AnalyzeOptions& options) {
    std::vector<CorpusEntry> entries;
    for (std::size_t i = 0; i < repos.size(); ++i) {
        CorpusEntry e;
        e.repo = repos[i];
        AnalyzeOptions per_repo = options;
        if (!options.out_dir.empty()) {
            per_repo.out_dir = (fs::path(options.out_dir) / directory_label(i + 1, repos[i])).string();
        }
        try {
            auto result = analyze_repo(repos[i], per_repo);
            e.ok = true;
            e.exit_code = result.exit_code();
            e.out_dir = per_repo.out_dir;
            e.metrics = std::move(result.report.metrics);
        } catch (const std::exception& ex) {
            e.error = ex.what();
        }
        entries.push_back(std::move(e));
    }
    auto summary = summarize_corpus(std::move(entries));
    if (!options.out_dir.empty()) {
        std::error_code ec;
        fs::create_directories(options.out_dir, ec);
        write_file(fs::path(options.out_dir) / "corpus_summary.json", corpus_summary_json(summary));
    }
    return summary;
}

std::string corpus_summary_json(const CorpusSummary& s) {
    json projects = json::array();
    for (const auto& e : s.projects) {
        json p = {{"repo", e.repo}, {"ok", e.ok}, {"exit_code", e.exit_code}};
        if (!e.out_dir.empty()) {
            p["out_dir"] = e.out_dir;
        }
        if (!e.ok) {
            p["error"] = e.error;
        }
        if (e.metrics) {
            const auto& m = *e.metrics;
            std::string tests;
            tests += m.regression_significant() ? "*" : "";
            tests += m.multi_leader_longer() ? "+" : "";
            tests += m.multi_leader_larger() ? "@" : "";
            p["total_lines"] = m.total_lines;
            p["clone_ratio"] = m.clone_ratio;
            p["clone_to_nonclone_ratio"] = m.clone_to_nonclone_ratio;
            p["clone_set_count"] = m.clone_set_count;
            p["single_leader_ratio"] = m.single_leader_ratio;
            p["purely_single_author_ratio"] = m.purely_single_author_ratio;
            p["tests"] = tests;
        }
        projects.push_back(std::move(p));
    }
    const json doc = {
        {"schema", "clone-blame-corpus/1"},
        {"tool_version", std::string(tool_version())},
        {"analyzed", s.analyzed},
        {"failed", s.failed},
        {"ratios",
         {{"clone_ratio", range_json(s.clone_ratio)},
          {"clone_to_nonclone_ratio", range_json(s.clone_to_nonclone_ratio)},
          {"single_leader_ratio", range_json(s.single_leader_ratio)},
          {"multi_leader_ratio", range_json(s.multi_leader_ratio)},
          {"purely_single_author_ratio", range_json(s.purely_single_author_ratio)},
          {"regression_slope", range_json(s.regression_slope)},
          {"regression_r_squared", range_json(s.regression_r_squared)}}},
        {"tests",
         {{"regression_significant", s.regression_significant},
          {"multi_leader_longer", s.multi_leader_longer},
          {"multi_leader_larger", s.multi_leader_larger}}},
        {"projects", projects},
    };
    return doc.dump(2) + "\n";
}

std::vector<std::string> read_repo_list(const std::string& list_file) {
    std::ifstream in(list_file);
    if (!in) {
        throw ConfigError("cannot open repository list " + list_file);
    }
    const auto base = fs::path(list_file).parent_path();
    std::vector<std::string> repos;
    std::string line;
    while (std::getline(in, line)) {
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') {
            continue;
        }
        const auto last = line.find_last_not_of(" \t\r");
        fs::path p(line.substr(first, last - first + 1));
        repos.push_back((p.is_relative() ? base / p : p).lexically_normal().string());
    }
    return repos;
}

}  // namespace cloneblame::report
