#include <gtest/gtest.h>

#include <algorithm>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "cloneblame/boxplot.hpp"
#include "cloneblame/errors.hpp"
#include "cloneblame/harness.hpp"
#include "cloneblame/pipeline.hpp"
#include "support.hpp"

using namespace cloneblame;
using namespace cloneblame::report;
using harness::CreateFile;
using harness::HistoryScript;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::size_t count_of(const std::string& text, const std::string& what) {
    std::size_t n = 0;
    for (auto p = text.find(what); p != std::string::npos; p = text.find(what, p + 1)) {
        ++n;
    }
    return n;
}

HistoryScript two_author_clone() {
    HistoryScript s;
    s.events.push_back(CreateFile{"src/A.java", "Alice", support::host_file("A", 0)});
    s.events.push_back(CreateFile{"src/B.java", "Bob", support::host_file("B", 1)});
    s.events.push_back(CreateFile{"src/C.java", "Bob", support::plain_file("C")});
    s.events.push_back(CreateFile{"src/test/CTest.java", "Carol", support::host_file("CTest", 2)});
    return s;
}

ProjectReport sample_report() {
    ProjectReport r;
    r.tool_version = "1.0.0";
    r.timestamp = "2026-01-02T03:04:05Z";
    r.repo = "/tmp/x";
    r.head_commit = std::string(40, 'a');
    r.seed = 9;
    r.tie_policy = authorship::TiePolicy::Random;
    r.files = {"A.java", "B,quoted\".java"};
    r.skipped = {{"C.java", "working tree differs from HEAD"}};
    r.warnings = {"A.java:3: unterminated string"};
    r.metrics.total_lines = 10;
    r.metrics.clone_lines = 4;
    r.metrics.clone_set_count = 1;
    r.metrics.clone_length = stats::Summary{2, 2, 2, 2, 2};
    r.metrics.regression = stats::RegressionResult{0.5, 1, 0.9, std::nullopt, 2};
    r.metrics.leader_distribution = {{2, 1}};
    CloneSetRecord s;
    s.id = 1;
    s.token_length = 60;
    s.mean_length_loc = 2;
    s.kind = authorship::CloneSetKind::MultiLeader;
    s.distinct_leaders = 2;
    s.instances = {{"A.java", 1, 2, 0, 59, "Ann, Jr.", 2, 1, false}, {"B,quoted\".java", 3, 4, 5, 64, "Bo", 1, 2, true}};
    r.clone_sets = {s};
    r.authors = {{"Ann, Jr.", 2, 3}, {"Bo", 2, 3}};
    return r;
}

}  // namespace

TEST(Selection, JavaFilesWithoutTest) {
    EXPECT_EQ(filter_target_paths({"src/Main.java", "src/test/Util.java", "src/LatestFoo.java", "README.md",
                                   "src/TESTING/X.java", "src/Main.java", "b/A.JAVA"}),
              (std::vector<std::string>{"src/Main.java"}));
    EXPECT_EQ(filter_target_paths({"B.txt", "A.java", "contest/C.java"}), (std::vector<std::string>{"A.java"}));
}

TEST(Selection, WalksTreeSkippingGit) {
    support::TempDir dir;
    std::filesystem::create_directories(dir.path() / "src/x");
    std::filesystem::create_directories(dir.path() / ".git/objects");
    std::ofstream(dir.path() / "src/x/B.java") << "class B {}\n";
    std::ofstream(dir.path() / "A.java") << "class A {}\n";
    std::ofstream(dir.path() / "src/MyTest.java") << "class MyTest {}\n";
    std::ofstream(dir.path() / ".git/objects/Z.java") << "";
    EXPECT_EQ(select_target_files(dir.path().string()), (std::vector<std::string>{"A.java", "src/x/B.java"}));
}

TEST(Json, RoundTrip) {
    const auto r = sample_report();
    const auto text = to_json(r);
    EXPECT_EQ(report_from_json(text), r);
    const auto j = nlohmann::json::parse(text);
    EXPECT_EQ(j["schema"], "clone-blame/1");
    EXPECT_TRUE(j["metrics"]["length_test"].is_null());
    EXPECT_THROW(report_from_json("{"), ParseError);
    auto bad = j;
    bad["schema"] = "other/9";
    EXPECT_THROW(report_from_json(bad.dump()), ParseError);
}

TEST(Csv, QuotingAndRows) {
    EXPECT_EQ(csv_field("plain"), "plain");
    EXPECT_EQ(csv_field("a,b"), "\"a,b\"");
    EXPECT_EQ(csv_field("say \"hi\""), "\"say \"\"hi\"\"\"");
    EXPECT_EQ(csv_field("two\nlines"), "\"two\nlines\"");
    const auto r = sample_report();
    const auto sets = clone_sets_csv(r);
    EXPECT_EQ(count_of(sets, "\n"), 2U);
    EXPECT_EQ(sets.substr(0, sets.find('\n')), "set_id,size,mean_length_loc,token_length,kind,leaders");
    EXPECT_NE(sets.find("\"Ann, Jr.;Bo\""), std::string::npos);
    const auto authors = authors_csv(r);
    EXPECT_EQ(count_of(authors, "\n"), 3U);
    EXPECT_NE(authors.find("\"Ann, Jr.\",2,3"), std::string::npos);
}

TEST(BoxPlot, Quartiles) {
    std::vector<double> v(100);
    for (int i = 0; i < 100; ++i) {
        v[i] = i + 1;
    }
    const auto b = compute_box_stats(v);
    EXPECT_DOUBLE_EQ(b.median, 50.5);
    EXPECT_DOUBLE_EQ(b.q1, 25.75);
    EXPECT_DOUBLE_EQ(b.q3, 75.25);
    EXPECT_DOUBLE_EQ(b.lower_whisker, 1);
    EXPECT_DOUBLE_EQ(b.upper_whisker, 100);
    EXPECT_TRUE(b.outliers.empty());

    const std::vector<double> one{7};
    const auto s = compute_box_stats(one);
    EXPECT_DOUBLE_EQ(s.q1, 7);
    EXPECT_DOUBLE_EQ(s.q3, 7);
    EXPECT_DOUBLE_EQ(s.lower_whisker, 7);

    const std::vector<double> spike{1, 2, 3, 4, 5, 100};
    const auto o = compute_box_stats(spike);
    EXPECT_EQ(o.outliers, (std::vector<double>{100}));
    EXPECT_DOUBLE_EQ(o.upper_whisker, 5);
    EXPECT_THROW(compute_box_stats(std::vector<double>{}), InsufficientDataError);
}

TEST(BoxPlot, SvgElements) {
    const std::vector<double> spike{1, 2, 3, 4, 5, 100};
    const auto svg = emit_boxplot_svg(spike, "lines");
    EXPECT_EQ(svg.rfind("<svg", 0), 0U);
    EXPECT_EQ(count_of(svg, "class=\"box\""), 1U);
    EXPECT_EQ(count_of(svg, "class=\"median\""), 1U);
    EXPECT_EQ(count_of(svg, "class=\"outlier\""), 1U);
    EXPECT_NE(svg.find("data-value=\"3.5\""), std::string::npos);
    const std::vector<BoxSeries> two{{"single", {1, 2, 3}}, {"multi", {4, 5}}};
    const auto both = emit_boxplot_svg(two, "sizes");
    EXPECT_EQ(count_of(both, "class=\"box\""), 2U);
    EXPECT_NE(both.find("multi"), std::string::npos);
}

TEST(Corpus, Aggregation) {
    std::vector<CorpusEntry> entries(3);
    entries[0].repo = "a";
    entries[0].ok = true;
    entries[0].exit_code = 0;
    entries[0].metrics.emplace();
    entries[0].metrics->clone_ratio = 0.10;
    entries[1].repo = "b";
    entries[1].ok = true;
    entries[1].exit_code = 0;
    entries[1].metrics.emplace();
    entries[1].metrics->clone_ratio = 0.20;
    entries[2].repo = "missing";
    entries[2].error = "not a git work tree";
    const auto s = summarize_corpus(entries);
    EXPECT_EQ(s.analyzed, 2U);
    EXPECT_EQ(s.failed, 1U);
    EXPECT_NEAR(s.clone_ratio.mean, 0.15, 1e-12);
    EXPECT_DOUBLE_EQ(s.clone_ratio.min, 0.10);
    EXPECT_DOUBLE_EQ(s.clone_ratio.max, 0.20);
    EXPECT_EQ(s.clone_ratio.count, 2U);
    EXPECT_EQ(nlohmann::json::parse(corpus_summary_json(s))["schema"], "clone-blame-corpus/1");
}

TEST(Corpus, ListFileAndFailures) {
    support::TempDir dir;
    const auto repo = harness::generate_repo(two_author_clone(), dir.sub("good"));
    std::filesystem::create_directories(dir.path() / "plain");
    std::ofstream(dir.path() / "repos.txt") << "# corpus\ngood\n\nplain\n" << dir.sub("absent") << "\n";
    const auto repos = read_repo_list(dir.sub("repos.txt"));
    ASSERT_EQ(repos.size(), 3U);
    AnalyzeOptions o;
    o.out_dir = dir.sub("out");
    const auto s = analyze_corpus(repos, o);
    EXPECT_EQ(s.analyzed, 1U);
    EXPECT_EQ(s.failed, 2U);
    EXPECT_TRUE(s.projects[0].ok);
    EXPECT_FALSE(s.projects[1].ok);
    EXPECT_TRUE(std::filesystem::exists(dir.path() / "out/corpus_summary.json"));
    EXPECT_TRUE(std::filesystem::exists(dir.path() / "out/001-good/report.json"));
}

TEST(Analyze, TwoAuthorClone) {
    support::TempDir dir;
    const auto repo = harness::generate_repo(two_author_clone(), dir.sub("r"));
    AnalyzeOptions o;
    o.out_dir = dir.sub("out");
    o.plots = true;
    const auto result = analyze_repo(repo.path, o);
    const auto& r = result.report;
    EXPECT_EQ(result.exit_code(), kExitSuccess);
    EXPECT_EQ(r.files, (std::vector<std::string>{"src/A.java", "src/B.java", "src/C.java"}));
    ASSERT_EQ(r.clone_sets.size(), 1U);
    const auto& s = r.clone_sets[0];
    EXPECT_EQ(s.kind, authorship::CloneSetKind::MultiLeader);
    EXPECT_EQ(s.leaders(), (std::vector<std::string>{"Alice", "Bob"}));
    EXPECT_EQ(s.instances[0].begin_line, support::kSnippetFirstLine);
    EXPECT_EQ(s.instances[0].end_line, support::kSnippetFirstLine + support::kSnippetLines - 1);
    EXPECT_EQ(r.metrics.clone_lines, 2 * support::kSnippetLines);
    EXPECT_EQ(r.metrics.total_lines, r.metrics.clone_lines + r.metrics.nonclone_lines);
    EXPECT_EQ(r.metrics.multi_leader_count, 1U);
    EXPECT_TRUE(harness::verify(repo.path, repo.truth, r).empty());
    for (const char* f : {"report.json", "clone_sets.csv", "authors.csv", "clone_length.svg", "clone_set_size.svg",
                          "leaders_per_set.svg"}) {
        EXPECT_TRUE(std::filesystem::exists(dir.path() / "out" / f)) << f;
    }
    EXPECT_EQ(report_from_json(slurp(dir.sub("out/report.json"))), r);
}

TEST(Analyze, RerunIsIdenticalApartFromTimestamp) {
    support::TempDir dir;
    const auto repo = harness::generate_repo(two_author_clone(), dir.sub("r"));
    auto a = analyze_repo(repo.path, {}).report;
    auto b = analyze_repo(repo.path, {.jobs = 1}).report;
    a.timestamp.clear();
    b.timestamp.clear();
    EXPECT_EQ(a, b);
}

TEST(Analyze, SingleAuthor) {
    support::TempDir dir;
    HistoryScript s;
    s.events.push_back(CreateFile{"A.java", "Alice", support::host_file("A", 0)});
    s.events.push_back(CreateFile{"B.java", "Alice", support::host_file("B", 1)});
    const auto repo = harness::generate_repo(s, dir.sub("r"));
    const auto r = analyze_repo(repo.path, {}).report;
    EXPECT_EQ(r.metrics.authors_total, 1U);
    ASSERT_EQ(r.clone_sets.size(), 1U);
    EXPECT_TRUE(r.clone_sets[0].purely_single_author);
    EXPECT_FALSE(r.metrics.regression);
    EXPECT_DOUBLE_EQ(r.metrics.purely_single_author_ratio, 1.0);
}

TEST(Analyze, ModifiedFileIsSkipped) {
    support::TempDir dir;
    const auto repo = harness::generate_repo(two_author_clone(), dir.sub("r"));
    std::ofstream(repo.path + "/src/C.java", std::ios::app) << "// local edit\n";
    const auto result = analyze_repo(repo.path, {});
    EXPECT_EQ(result.exit_code(), kExitPartial);
    ASSERT_EQ(result.report.skipped.size(), 1U);
    EXPECT_EQ(result.report.skipped[0].path, "src/C.java");
    EXPECT_EQ(result.report.clone_sets.size(), 1U);
}

TEST(Analyze, NotARepository) {
    support::TempDir dir;
    EXPECT_THROW(analyze_repo(dir.path().string(), {}), ConfigError);
    EXPECT_THROW(analyze_repo(dir.sub("absent"), {}), ConfigError);
}
