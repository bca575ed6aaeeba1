#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "cloneblame/errors.hpp"
#include "cloneblame/harness.hpp"
#include "cloneblame/pipeline.hpp"

namespace {

using namespace cloneblame;
namespace fs = std::filesystem;

struct CommonFlags {
    report::AnalyzeOptions options;
    std::string tie_policy = "det";
    bool quiet = false;
    bool timings = false;
};

void add_common(CLI::App& cmd, CommonFlags& f) {
    cmd.add_option("--min-tokens", f.options.params.min_tokens, "Minimum clone length in tokens")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    cmd.add_option("--rnr", f.options.params.min_rnr, "Minimum ratio of non-repeated tokens")
        ->capture_default_str()
        ->check(CLI::Range(0.0, 1.0));
    cmd.add_option("--tks", f.options.params.min_tks, "Minimum distinct token kinds")->capture_default_str();
    cmd.add_option("--tie-policy", f.tie_policy, "Leader tie resolution")
        ->capture_default_str()
        ->check(CLI::IsMember({"det", "deterministic", "random"}));
    cmd.add_option("--seed", f.options.seed, "Seed for --tie-policy random")->capture_default_str();
    cmd.add_option("--out", f.options.out_dir, "Output directory");
    cmd.add_flag("--plots", f.options.plots, "Write SVG box plots");
    cmd.add_option("--jobs,-j", f.options.jobs, "Worker threads (0: all cores)")->capture_default_str();
    cmd.add_flag("--quiet,-q", f.quiet, "Only print errors");
    cmd.add_flag("--timings", f.timings, "Print per-stage timings to stderr");
}

void finish_common(CommonFlags& f) {
    f.options.tie_policy =
        f.tie_policy == "random" ? authorship::TiePolicy::Random : authorship::TiePolicy::Deterministic;
}

std::string percent(double ratio) {
    std::ostringstream s;
    s.setf(std::ios::fixed);
    s.precision(1);
    s << ratio * 100.0 << '%';
    return s.str();
}

std::string fixed(double v, int digits = 2) {
    std::ostringstream s;
    s.setf(std::ios::fixed);
    s.precision(digits);
    s << v;
    return s.str();
}

std::string p_text(double p) {
    std::ostringstream s;
    s.precision(3);
    s << p;
    return s.str();
}

void print_summary(const report::ProjectReport& r, std::ostream& out) {
    const auto& m = r.metrics;
    out << "repository      " << r.repo << "\n";
    out << "head            " << (r.head_commit.empty() ? "(none)" : r.head_commit) << "\n";
    out << "files           " << r.files.size() << " analyzed, " << r.skipped.size() << " skipped\n";
    out << "lines           " << m.total_lines << " total, " << m.clone_lines << " clone (" << percent(m.clone_ratio)
        << "), " << m.nonclone_lines << " non-clone\n";
    out << "clone/non-clone " << fixed(m.clone_to_nonclone_ratio, 3) << "\n";
    out << "clone sets      " << m.clone_set_count << "\n";
    if (m.clone_length) {
        const auto& l = *m.clone_length;
        out << "clone length    max " << fixed(l.max, 1) << ", min " << fixed(l.min, 1) << ", mean " << fixed(l.mean)
            << ", median " << fixed(l.median, 1) << " (LOC)\n";
    }
    if (m.set_size) {
        const auto& s = *m.set_size;
        out << "set size        max " << fixed(s.max, 0) << ", min " << fixed(s.min, 0) << ", mean " << fixed(s.mean)
            << ", median " << fixed(s.median, 1) << "\n";
    }
    out << "authors         " << m.authors_total << " total, " << m.authors_clone << " in clone lines, "
        << m.authors_nonclone << " in non-clone lines\n";
    if (m.regression) {
        const auto& g = *m.regression;
        out << "regression      clone = " << fixed(g.slope, 4) << " * non-clone + " << fixed(g.intercept, 2)
            << ", r^2 " << fixed(g.r_squared, 3) << ", p " << (g.p_value ? p_text(*g.p_value) : "n/a") << "\n";
    } else {
        out << "regression      n/a\n";
    }
    out << "leaders         " << m.single_leader_count << " single-leader (" << percent(m.single_leader_ratio) << "), "
        << m.multi_leader_count << " multi-leader (" << percent(m.multi_leader_ratio) << "), "
        << m.purely_single_author_count << " purely single-author (" << percent(m.purely_single_author_ratio)
        << ")\n";
    const auto test_line = [&](const char* name, const std::optional<stats::GroupComparison>& t) {
        out << name;
        if (!t) {
            out << "n/a\n";
            return;
        }
        out << "U " << fixed(t->test.u1, 1) << ", p " << p_text(t->test.p_value) << ", "
            << stats::to_string(t->test.direction) << (t->test.exact ? " (exact)" : "") << ", means "
            << fixed(t->single_leader.mean) << " single vs " << fixed(t->multi_leader.mean) << " multi\n";
    };
    test_line("length test     ", m.length_test);
    test_line("size test       ", m.size_test);
    std::string flags;
    flags += m.regression_significant() ? "*" : "";
    flags += m.multi_leader_longer() ? "+" : "";
    flags += m.multi_leader_larger() ? "@" : "";
    out << "tests           " << (flags.empty() ? "-" : flags) << "\n";
    for (const auto& s : r.skipped) {
        out << "skipped         " << s.path << ": " << s.reason << "\n";
    }
}

void print_timings(const report::StageTimings& t) {
    std::cerr << "timings: select " << fixed(t.select, 3) << "s, blame " << fixed(t.blame, 3) << "s, tokenize "
              << fixed(t.tokenize, 3) << "s, detect " << fixed(t.detect, 3) << "s, join " << fixed(t.join, 3)
              << "s, write " << fixed(t.write, 3) << "s\n";
}

std::string read_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ConfigError("cannot open " + path);
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Token-based clone detection joined with git blame authorship"};
    app.set_version_flag("--version", std::string(report::tool_version()));
    app.require_subcommand(1);

    CommonFlags analyze_flags;
    std::string repo;
    auto* analyze = app.add_subcommand("analyze", "Analyze one git repository");
    analyze->add_option("repo", repo, "Repository work tree")->required();
    add_common(*analyze, analyze_flags);

    CommonFlags corpus_flags;
    std::vector<std::string> lists;
    auto* corpus = app.add_subcommand("corpus", "Analyze every repository named in list files");
    corpus->add_option("lists", lists, "Files with one repository path per line")->required();
    add_common(*corpus, corpus_flags);

    std::string script_file;
    std::string workdir;
    std::optional<std::uint64_t> random_seed;
    std::string save_script;
    bool keep_going = false;
    auto* harness_cmd = app.add_subcommand("harness", "Build a repository from a history script and check the analysis");
    harness_cmd->add_option("workdir", workdir, "Empty directory for the generated repository")->required();
    auto* script_opt = harness_cmd->add_option("--script", script_file, "History script to replay");
    auto* seed_opt = harness_cmd->add_option("--random", random_seed, "Generate a random script with this seed");
    script_opt->excludes(seed_opt);
    harness_cmd->add_option("--save-script", save_script, "Write the replayed script here");
    harness_cmd->add_flag("--keep-going", keep_going, "Exit 0 even when discrepancies are found");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? report::kExitSuccess : report::kExitFatal;
    }

    try {
        if (*analyze) {
            finish_common(analyze_flags);
            const auto result = report::analyze_repo(repo, analyze_flags.options);
            if (!analyze_flags.quiet) {
                print_summary(result.report, std::cout);
                for (const auto& w : result.report.warnings) {
                    std::cerr << "warning: " << w << "\n";
                }
            }
            if (analyze_flags.timings) {
                print_timings(result.timings);
            }
            return result.exit_code();
        }
        if (*corpus) {
            finish_common(corpus_flags);
            std::vector<std::string> repos;
            for (const auto& l : lists) {
                const auto more = report::read_repo_list(l);
                repos.insert(repos.end(), more.begin(), more.end());
            }
            const auto summary = report::analyze_corpus(repos, corpus_flags.options);
            if (!corpus_flags.quiet) {
                std::cout << summary.analyzed << " analyzed, " << summary.failed << " failed\n";
                const auto& c = summary.clone_ratio;
                if (c.count > 0) {
                    std::cout << "clone ratio: min " << percent(c.min) << ", max " << percent(c.max) << ", mean "
                              << percent(c.mean) << "\n";
                }
                std::cout << "tests: * " << summary.regression_significant << ", + " << summary.multi_leader_longer
                          << ", @ " << summary.multi_leader_larger << "\n";
                for (const auto& p : summary.projects) {
                    if (!p.ok) {
                        std::cerr << "failed: " << p.repo << ": " << p.error << "\n";
                    }
                }
            }
            if (!repos.empty() && summary.analyzed == 0) {
                return report::kExitFatal;
            }
            bool partial = summary.failed > 0;
            for (const auto& p : summary.projects) {
                partial = partial || p.exit_code != report::kExitSuccess;
            }
            return partial ? report::kExitPartial : report::kExitSuccess;
        }
        if (*harness_cmd) {
            harness::HistoryScript script;
            if (random_seed) {
                script = harness::random_script({}, *random_seed);
            } else if (!script_file.empty()) {
                script = harness::parse_script(read_text(script_file));
            } else {
                throw ConfigError("harness needs --script or --random");
            }
            if (!save_script.empty()) {
                std::ofstream(save_script, std::ios::binary) << harness::serialize_script(script);
            }
            const auto generated = harness::generate_repo(script, workdir);
            report::AnalyzeOptions options;
            options.params = generated.truth.params;
            const auto result = report::analyze_repo(generated.path, options);
            const auto issues = harness::verify(generated.path, generated.truth, result.report);
            std::cout << generated.path << ": " << generated.truth.clone_sets.size() << " expected clone sets, "
                      << result.report.clone_sets.size() << " reported, " << issues.size() << " discrepancies\n";
            for (const auto& i : issues) {
                std::cout << "  " << i << "\n";
            }
            return issues.empty() || keep_going ? report::kExitSuccess : report::kExitPartial;
        }
    } catch (const std::exception& e) {
        std::cerr << "clone-blame: " << e.what() << "\n";
        return report::kExitFatal;
    }
    return report::kExitFatal;
}
