// Acceptance checks. One line per criterion: PASS, FAIL or SKIP, then a
// short detail. Exit status is non-zero when any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "cloneblame/detector.hpp"
#include "cloneblame/harness.hpp"
#include "cloneblame/lexer.hpp"
#include "cloneblame/pipeline.hpp"
#include "cloneblame/stats.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace cloneblame;

namespace {

enum class Verdict { Pass, Fail, Skip };

struct Outcome {
    Verdict verdict = Verdict::Pass;
    std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string secs(double s) {
    std::ostringstream o;
    o.precision(3);
    o << s << "s";
    return o.str();
}

Outcome fail(const std::string& why) { return {Verdict::Fail, why}; }

struct HarnessRun {
    harness::GeneratedRepo repo;
    report::AnalysisResult result;
    std::vector<std::string> issues;
};

HarnessRun run_harness(const harness::HistoryScript& script, const std::string& workdir) {
    auto repo = harness::generate_repo(script, workdir);
    report::AnalyzeOptions opts;
    opts.params = repo.truth.params;
    auto result = report::analyze_repo(repo.path, opts);
    auto issues = harness::verify(repo.path, repo.truth, result.report);
    return {std::move(repo), std::move(result), std::move(issues)};
}

Outcome random_histories() {
    const auto t0 = Clock::now();
    std::size_t sets = 0;
    std::size_t multi = 0;
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
        support::TempDir dir;
        harness::ScriptSpec spec;
        spec.utf8_author = seed % 5 == 0;
        const auto run = run_harness(harness::random_script(spec, seed), dir.sub("r"));
        if (!run.issues.empty()) {
            return fail("seed " + std::to_string(seed) + ": " + run.issues.front());
        }
        sets += run.result.report.clone_sets.size();
        multi += run.result.report.metrics.multi_leader_count;
    }
    const double t = seconds_since(t0);
    if (t > 120.0) {
        return fail("took " + secs(t));
    }
    return {Verdict::Pass, "50 histories, " + std::to_string(sets) + " sets (" + std::to_string(multi) +
                               " multi-leader), " + secs(t)};
}

Outcome detector_vs_oracle() {
    const auto t0 = Clock::now();
    std::mt19937_64 rng(20240601);
    std::size_t sets = 0;
    for (int round = 0; round < 1000; ++round) {
        const auto files = std::uniform_int_distribution<std::uint32_t>(1, 5)(rng);
        const auto alphabet = std::uniform_int_distribution<std::uint32_t>(2, 20)(rng);
        const auto corpus = oracle::random_corpus(rng, files, 200, alphabet);
        detect::DetectorParams p;
        p.min_tokens = std::uniform_int_distribution<std::uint32_t>(5, 15)(rng);
        p.min_rnr = std::uniform_real_distribution<double>(0.0, 0.9)(rng);
        p.min_tks = std::uniform_int_distribution<std::uint32_t>(1, 8)(rng);
        const auto expected = oracle::clone_sets(corpus, p);
        const auto got = oracle::as_sets(detect::detect_clone_sets(oracle::token_files(corpus), p));
        if (got != expected) {
            return fail("corpus " + std::to_string(round) + ": " + std::to_string(got.size()) + " sets vs " +
                        std::to_string(expected.size()) + " expected");
        }
        sets += expected.size();
    }
    const double t = seconds_since(t0);
    if (t > 300.0) {
        return fail("took " + secs(t));
    }
    return {Verdict::Pass, "1000 corpora, " + std::to_string(sets) + " sets, " + secs(t)};
}

Outcome rnr_vs_oracle() {
    std::mt19937_64 rng(77);
    for (int round = 0; round < 500; ++round) {
        const auto n = std::uniform_int_distribution<std::size_t>(1, 120)(rng);
        const auto alphabet = std::uniform_int_distribution<std::uint32_t>(1, 6)(rng);
        std::vector<std::string> s;
        std::vector<lexer::NormalizedToken> t;
        for (std::size_t i = 0; i < n; ++i) {
            s.push_back("t" + std::to_string(std::uniform_int_distribution<std::uint32_t>(0, alphabet - 1)(rng)));
            t.push_back({s.back(), static_cast<std::uint32_t>(i)});
        }
        if (detect::compute_rnr(t) != oracle::rnr(s)) {
            return fail("fragment " + std::to_string(round));
        }
    }
    return {Verdict::Pass, "500 fragments"};
}

Outcome statistics() {
    const std::vector<double> a{1, 2, 3};
    const std::vector<double> b{4, 5, 6};
    const auto u = stats::mann_whitney_u(a, b);
    if (std::abs(u.p_value - 0.1) > 1e-12 || u.u1 != 0.0) {
        return fail("U test on separated samples");
    }
    const std::vector<std::pair<double, double>> line{{1, 3}, {2, 5}, {3, 7}, {4, 9}};
    const auto r = stats::linear_regression(line);
    if (std::abs(r.slope - 2) > 2e-12 || std::abs(r.intercept - 1) > 1e-12 || r.r_squared != 1.0) {
        return fail("regression on y = 2x + 1");
    }
    if (std::abs(1.0 - stats::student_t_cdf(2.015, 5) - 0.05) > 5e-4) {
        return fail("t distribution at df 5");
    }
    std::mt19937_64 rng(3);
    double worst = 0.0;
    for (int round = 0; round < 200; ++round) {
        std::vector<double> x(std::uniform_int_distribution<std::size_t>(8, 12)(rng));
        std::vector<double> y(std::uniform_int_distribution<std::size_t>(8, 12)(rng));
        const double shift = std::uniform_real_distribution<double>(0.0, 1.5)(rng);
        std::normal_distribution<double> d(0.0, 1.0);
        for (auto& v : x) {
            v = d(rng);
        }
        for (auto& v : y) {
            v = d(rng) + shift;
        }
        const double gap = std::abs(stats::mann_whitney_u(x, y, stats::UTestMode::Exact).p_value -
                                    stats::mann_whitney_u(x, y, stats::UTestMode::Approximate).p_value);
        worst = std::max(worst, gap);
    }
    if (worst > 0.02) {
        return fail("approximate p off by " + std::to_string(worst));
    }
    for (int round = 0; round < 200; ++round) {
        std::vector<double> x(std::uniform_int_distribution<std::size_t>(1, 7)(rng));
        std::vector<double> y(std::uniform_int_distribution<std::size_t>(1, 7)(rng));
        for (auto& v : x) {
            v = std::uniform_int_distribution<int>(0, 6)(rng);
        }
        for (auto& v : y) {
            v = std::uniform_int_distribution<int>(0, 6)(rng);
        }
        if (std::abs(stats::mann_whitney_u(x, y, stats::UTestMode::Exact).p_value - oracle::exact_u_p(x, y)) >
            1e-12) {
            return fail("exact U p, sample " + std::to_string(round));
        }
    }
    return {Verdict::Pass, "exact and approximate U (worst gap " + std::to_string(worst) + "), regression, t table"};
}

// Criteria 5 and 6 share the same repositories.
struct IdentityResults {
    Outcome conservation;
    Outcome purely_bound;
};

IdentityResults identities() {
    IdentityResults out{{Verdict::Pass, ""}, {Verdict::Pass, ""}};
    std::size_t repos = 0;
    for (std::uint64_t seed = 1000; seed < 1020; ++seed) {
        support::TempDir dir;
        harness::ScriptSpec spec;
        spec.max_copies = 14;
        const auto run = run_harness(harness::random_script(spec, seed), dir.sub("r"));
        const auto& m = run.result.report.metrics;
        std::uint64_t clone = 0;
        std::uint64_t non = 0;
        for (const auto& a : run.result.report.authors) {
            clone += a.clone_lines;
            non += a.nonclone_lines;
        }
        const auto tag = "seed " + std::to_string(seed) + ": ";
        if (m.total_lines != m.clone_lines + m.nonclone_lines) {
            out.conservation = fail(tag + "total != clone + non-clone");
        } else if (clone != m.clone_lines || non != m.nonclone_lines) {
            out.conservation = fail(tag + "author sums differ from line totals");
        } else if (m.single_leader_count + m.multi_leader_count != m.clone_set_count) {
            out.conservation = fail(tag + "single + multi != sets");
        } else if (m.clone_set_count > 0 && std::abs(m.single_leader_ratio + m.multi_leader_ratio - 1.0) > 1e-12) {
            out.conservation = fail(tag + "leader ratios do not sum to 1");
        }
        if (m.purely_single_author_ratio > m.single_leader_ratio + 1e-12) {
            out.purely_bound = fail(tag + "purely single-author ratio above single-leader ratio");
        }
        if (out.conservation.verdict == Verdict::Fail && out.purely_bound.verdict == Verdict::Fail) {
            break;
        }
        ++repos;
    }
    if (out.conservation.verdict == Verdict::Pass) {
        out.conservation.detail = std::to_string(repos) + " repositories";
    }
    if (out.purely_bound.verdict == Verdict::Pass) {
        out.purely_bound.detail = std::to_string(repos) + " repositories";
    }
    return out;
}

Outcome reference_project() {
    const char* path = std::getenv("CLONE_BLAME_ANT_REPO");
    if (path == nullptr || *path == '\0') {
        return {Verdict::Skip, "set CLONE_BLAME_ANT_REPO to a checkout to run"};
    }
    const auto r = report::analyze_repo(path, {}).report;
    const auto& m = r.metrics;
    std::ostringstream d;
    d << "clone ratio " << m.clone_ratio;
    d << ", sets " << m.clone_set_count << ", r^2 " << (m.regression ? m.regression->r_squared : 0.0)
      << ", single-leader " << m.single_leader_ratio;
    const bool ok = m.clone_ratio >= 0.09 && m.clone_ratio <= 0.19 && m.clone_set_count >= 500 &&
                    m.clone_set_count <= 2000 && m.regression && m.regression->r_squared >= 0.85 &&
                    m.single_leader_ratio >= 0.40 && m.single_leader_ratio <= 0.65;
    return {ok ? Verdict::Pass : Verdict::Fail, d.str()};
}

harness::ScriptSpec large_spec() {
    harness::ScriptSpec spec;
    spec.min_authors = 8;
    spec.max_authors = 12;
    spec.min_files = 760;
    spec.max_files = 760;
    spec.min_members = 30;
    spec.max_members = 40;
    spec.snippet_share = 0.2;
    spec.min_copies = 250;
    spec.max_copies = 250;
    spec.max_type2_edits = 40;
    spec.max_filler_edits = 40;
    spec.max_member_inserts = 20;
    return spec;
}

Outcome scale() {
    support::TempDir dir;
    const auto t0 = Clock::now();
    const auto script = harness::random_script(large_spec(), 4242);
    auto run = run_harness(script, dir.sub("big"));
    const double total = seconds_since(t0);
    const auto loc = run.result.report.metrics.total_lines;
    if (!run.issues.empty()) {
        return fail(run.issues.front());
    }
    if (loc < 200000) {
        return fail("only " + std::to_string(loc) + " LOC generated");
    }
    if (total > 600.0) {
        return fail("end to end took " + secs(total));
    }

    // Detection alone on 250K+ LOC: the same files plus a second history.
    auto contents = harness::replay_contents(script);
    const auto more = harness::replay_contents(harness::random_script(large_spec(), 4243));
    for (const auto& [path, text] : more) {
        contents.emplace("extra/" + path, text);
    }
    std::vector<detect::TokenFile> files;
    std::uint64_t lines = 0;
    for (const auto& [path, text] : contents) {
        const auto id = static_cast<lexer::FileId>(files.size());
        files.push_back(detect::make_token_file(id, lexer::tokenize_java(text, id).tokens));
        lines += lexer::count_lines(text);
    }
    if (lines < 250000) {
        return fail("detection corpus has only " + std::to_string(lines) + " LOC");
    }
    const auto t1 = Clock::now();
    const auto sets = detect::detect_clone_sets(files, {});
    const double detect_time = seconds_since(t1);
    if (detect_time > 60.0) {
        return fail("detection on " + std::to_string(lines) + " LOC took " + secs(detect_time));
    }
    return {Verdict::Pass, std::to_string(loc) + " LOC end to end in " + secs(total) + "; detection on " +
                               std::to_string(lines) + " LOC in " + secs(detect_time) + " (" +
                               std::to_string(sets.size()) + " sets)"};
}

}  // namespace

int main() {
    bool failed = false;
    const auto report = [&](int id, const char* name, const std::function<Outcome()>& check) {
        Outcome o;
        try {
            o = check();
        } catch (const std::exception& e) {
            o = fail(std::string("exception: ") + e.what());
        }
        const char* word = o.verdict == Verdict::Pass ? "PASS" : o.verdict == Verdict::Fail ? "FAIL" : "SKIP";
        failed = failed || o.verdict == Verdict::Fail;
        std::cout << word << " " << id << " " << name << ": " << o.detail << std::endl;
    };

    report(1, "random histories agree with ground truth", random_histories);
    report(2, "clone detection agrees with brute force", detector_vs_oracle);
    report(3, "RNR agrees with tandem enumeration", rnr_vs_oracle);
    report(4, "statistics", statistics);
    IdentityResults ids;
    bool ids_done = false;
    const auto get_ids = [&]() -> const IdentityResults& {
        if (!ids_done) {
            ids = identities();
            ids_done = true;
        }
        return ids;
    };
    report(5, "line and author conservation", [&] { return get_ids().conservation; });
    report(6, "purely single-author ratio within single-leader ratio", [&] { return get_ids().purely_bound; });
    report(7, "reference project within expected bands", reference_project);
    report(8, "scale", scale);
    return failed ? 1 : 0;
}
