#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "cloneblame/detector.hpp"
#include "cloneblame/lexer.hpp"
#include "cloneblame/suffix_array.hpp"
#include "oracles.hpp"

using namespace cloneblame;
using detect::DetectorParams;

namespace {

std::vector<detect::Symbol> random_text(std::mt19937_64& rng, std::size_t n, std::uint32_t alphabet) {
    std::uniform_int_distribution<std::uint32_t> d(0, alphabet - 1);
    std::vector<detect::Symbol> t(n);
    for (auto& x : t) {
        x = d(rng);
    }
    return t;
}

std::vector<lexer::NormalizedToken> symbols(std::initializer_list<const char*> s) {
    std::vector<lexer::NormalizedToken> out;
    std::uint32_t i = 0;
    for (const auto* x : s) {
        out.push_back({x, i++});
    }
    return out;
}

const char* kMethod = R"(    int sumPositive(int[] values, int limit) {
        int total = 0;
        for (int i = 0; i < values.length; i++) {
            if (values[i] > 0 && total < limit) {
                total += values[i] * 2;
            } else {
                System.out.println("skip " + i);
            }
        }
        return total / values.length;
    }
)";

detect::TokenFile file_from(const std::string& text, lexer::FileId id) {
    const auto r = lexer::tokenize_java(text, id);
    return detect::make_token_file(id, r.tokens);
}

}  // namespace

TEST(SuffixArray, MatchesNaiveSortAndSerialReference) {
    std::mt19937_64 rng(7);
    for (int round = 0; round < 200; ++round) {
        const auto n = std::uniform_int_distribution<std::size_t>(0, 300)(rng);
        const auto text = random_text(rng, n, 1 + static_cast<std::uint32_t>(round % 6));
        std::vector<std::uint32_t> naive(n);
        std::iota(naive.begin(), naive.end(), 0U);
        std::sort(naive.begin(), naive.end(), [&](std::uint32_t a, std::uint32_t b) {
            return std::lexicographical_compare(text.begin() + a, text.end(), text.begin() + b, text.end());
        });
        const auto sa = detect::suffix_array(text);
        ASSERT_EQ(sa, naive);
        ASSERT_EQ(detect::suffix_array_serial(text), naive);

        std::vector<std::uint32_t> naive_lcp(n, 0);
        for (std::size_t i = 1; i < n; ++i) {
            std::uint32_t h = 0;
            while (sa[i - 1] + h < n && sa[i] + h < n && text[sa[i - 1] + h] == text[sa[i] + h]) {
                ++h;
            }
            naive_lcp[i] = h;
        }
        ASSERT_EQ(detect::lcp_array(text, sa), naive_lcp);
        ASSERT_EQ(detect::lcp_array_serial(text, sa), naive_lcp);
    }
}

TEST(Detector, IdenticalMethodInTwoFilesIsOneSet) {
    const std::vector files{file_from(kMethod, 0), file_from(std::string("    void\n") + kMethod, 1)};
    const auto sets = detect::detect_clone_sets(files, {.min_tokens = 50, .min_rnr = 0.5, .min_tks = 12});
    ASSERT_EQ(sets.size(), 1U);
    ASSERT_EQ(sets[0].size(), 2U);
    EXPECT_EQ(sets[0].instances[0].begin_line, 1U);
    EXPECT_EQ(sets[0].instances[0].end_line, 11U);
    EXPECT_EQ(sets[0].instances[1].begin_line, 2U);
    EXPECT_EQ(sets[0].instances[1].end_line, 12U);
    EXPECT_EQ(sets[0].id, 1U);
    EXPECT_DOUBLE_EQ(sets[0].mean_length_loc(), 11.0);
}

TEST(Detector, RenamedCopyStillMatches) {
    std::string renamed = kMethod;
    for (const auto& [from, to] : std::vector<std::pair<std::string, std::string>>{
             {"sumPositive", "addUp"}, {"values", "xs"}, {"total", "acc"}, {"limit", "cap"}, {"\"skip \"", "\"no \""}}) {
        for (auto p = renamed.find(from); p != std::string::npos; p = renamed.find(from, p + to.size())) {
            renamed.replace(p, from.size(), to);
        }
    }
    const auto a = file_from(kMethod, 0);
    const auto b = file_from(renamed, 1);
    ASSERT_EQ(a.tokens.size(), b.tokens.size());
    for (std::size_t i = 0; i < a.tokens.size(); ++i) {
        ASSERT_EQ(a.tokens[i].symbol, b.tokens[i].symbol);
    }
    const std::vector files{a, b};
    const auto sets = detect::detect_clone_sets(files, {});
    ASSERT_EQ(sets.size(), 1U);
    EXPECT_EQ(sets[0].size(), 2U);
    EXPECT_EQ(sets[0].token_length, a.tokens.size());
}

TEST(Detector, ShortFileGivesNothing) {
    std::mt19937_64 rng(3);
    auto corpus = oracle::random_corpus(rng, 1, 40, 10);
    corpus[0].resize(std::min<std::size_t>(corpus[0].size(), 40));
    corpus.push_back(corpus[0]);
    EXPECT_TRUE(detect::detect_clone_sets(oracle::token_files(corpus), {}).empty());
    EXPECT_TRUE(detect::detect_clone_sets({}, {}).empty());
}

TEST(Detector, MatchesBruteForceOracle) {
    std::mt19937_64 rng(2024);
    for (int round = 0; round < 150; ++round) {
        const auto files = std::uniform_int_distribution<std::uint32_t>(1, 4)(rng);
        const auto alphabet = std::uniform_int_distribution<std::uint32_t>(2, 20)(rng);
        const auto corpus = oracle::random_corpus(rng, files, 200, alphabet);
        DetectorParams p;
        p.min_tokens = std::uniform_int_distribution<std::uint32_t>(5, 15)(rng);
        p.min_rnr = std::uniform_real_distribution<double>(0.0, 0.8)(rng);
        p.min_tks = std::uniform_int_distribution<std::uint32_t>(1, 6)(rng);
        const auto tf = oracle::token_files(corpus);
        const auto expected = oracle::clone_sets(corpus, p);
        ASSERT_EQ(oracle::as_sets(detect::detect_clone_sets(tf, p)), expected) << "round " << round;
        ASSERT_EQ(oracle::as_sets(detect::detect_clone_sets_serial(tf, p)), expected) << "round " << round;
    }
}

TEST(Detector, InstancesCarryLinesOfTheirEndTokens) {
    std::mt19937_64 rng(11);
    const auto corpus = oracle::random_corpus(rng, 3, 200, 3);
    const auto tf = oracle::token_files(corpus);
    for (const auto& s : detect::detect_clone_sets(tf, {.min_tokens = 6, .min_rnr = 0.0, .min_tks = 1})) {
        EXPECT_GE(s.size(), 2U);
        for (const auto& i : s.instances) {
            EXPECT_EQ(i.begin_line, tf[i.file_id].lines[i.begin_token]);
            EXPECT_EQ(i.end_line, tf[i.file_id].lines[i.end_token]);
            EXPECT_EQ(i.token_count(), s.token_length);
        }
    }
}

TEST(Detector, DeterministicAndIdsAreSequential) {
    std::mt19937_64 rng(5);
    const auto corpus = oracle::random_corpus(rng, 4, 200, 4);
    const auto tf = oracle::token_files(corpus);
    const DetectorParams p{.min_tokens = 5, .min_rnr = 0.0, .min_tks = 1};
    const auto a = detect::detect_clone_sets(tf, p);
    EXPECT_EQ(a, detect::detect_clone_sets(tf, p));
    for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_EQ(a[i].id, i + 1);
    }
}

TEST(Detector, FileOrderDoesNotChangeSets) {
    std::mt19937_64 rng(9);
    for (int round = 0; round < 30; ++round) {
        auto corpus = oracle::random_corpus(rng, 4, 150, 3);
        const DetectorParams p{.min_tokens = 6, .min_rnr = 0.2, .min_tks = 2};
        const auto forward = oracle::as_sets(detect::detect_clone_sets(oracle::token_files(corpus), p));
        std::vector<std::uint32_t> perm{0, 1, 2, 3};
        std::shuffle(perm.begin(), perm.end(), rng);
        std::vector<std::vector<std::string>> shuffled(4);
        for (std::uint32_t i = 0; i < 4; ++i) {
            shuffled[perm[i]] = corpus[i];
        }
        auto back = oracle::as_sets(detect::detect_clone_sets(oracle::token_files(shuffled), p));
        for (auto& s : back) {
            for (auto& inst : s.instances) {
                inst.file = static_cast<std::uint32_t>(std::find(perm.begin(), perm.end(), inst.file) - perm.begin());
            }
            std::sort(s.instances.begin(), s.instances.end());
        }
        std::sort(back.begin(), back.end());
        ASSERT_EQ(back, forward);
    }
}

TEST(Detector, StricterFiltersNeverAddSets) {
    std::mt19937_64 rng(13);
    for (int round = 0; round < 40; ++round) {
        const auto corpus = oracle::random_corpus(rng, 3, 200, 3);
        const auto tf = oracle::token_files(corpus);
        const DetectorParams loose{.min_tokens = 5, .min_rnr = 0.1, .min_tks = 2};
        const auto base = oracle::as_sets(detect::detect_clone_sets(tf, loose));
        for (const DetectorParams& strict : {DetectorParams{8, 0.1, 2}, DetectorParams{5, 0.4, 2},
                                              DetectorParams{5, 0.1, 3}}) {
            for (const auto& s : oracle::as_sets(detect::detect_clone_sets(tf, strict))) {
                ASSERT_TRUE(std::binary_search(base.begin(), base.end(), s));
            }
        }
    }
}

TEST(Detector, RejectsInvalidParams) {
    EXPECT_THROW(detect::detect_clone_sets({}, {.min_tokens = 0}), std::invalid_argument);
    EXPECT_THROW(detect::detect_clone_sets({}, {.min_tokens = 5, .min_rnr = 1.5}), std::invalid_argument);
    EXPECT_THROW(detect::detect_clone_sets({}, {.min_tokens = 5, .min_rnr = 0.5, .min_tks = 0}), std::invalid_argument);
}

TEST(Rnr, Examples) {
    EXPECT_DOUBLE_EQ(detect::compute_rnr(symbols({"a", "b", "c", "d", "e", "f"})), 1.0);
    EXPECT_DOUBLE_EQ(detect::compute_rnr(symbols({"a", "b", "a", "b", "a", "b"})), 0.0);
    EXPECT_DOUBLE_EQ(
        detect::compute_rnr(symbols({"x", "y", "z", "x", "y", "z", "q", "r", "s", "t", "u", "v"})), 0.5);
    EXPECT_THROW(detect::compute_rnr(std::span<const lexer::NormalizedToken>{}), std::invalid_argument);
}

TEST(Rnr, MatchesTandemEnumeration) {
    std::mt19937_64 rng(99);
    for (int round = 0; round < 300; ++round) {
        const auto n = std::uniform_int_distribution<std::size_t>(1, 60)(rng);
        const auto alphabet = std::uniform_int_distribution<std::uint32_t>(1, 5)(rng);
        std::vector<std::string> s;
        std::vector<lexer::NormalizedToken> t;
        for (std::size_t i = 0; i < n; ++i) {
            s.push_back("t" + std::to_string(std::uniform_int_distribution<std::uint32_t>(0, alphabet - 1)(rng)));
            t.push_back({s.back(), static_cast<std::uint32_t>(i)});
        }
        ASSERT_DOUBLE_EQ(detect::compute_rnr(t), oracle::rnr(s));
    }
}

TEST(Tks, Examples) {
    EXPECT_EQ(detect::compute_tks(symbols({"int", "$id", "=", "$num", ";"})), 5U);
    EXPECT_EQ(detect::compute_tks(symbols({";", ";", ";", ";"})), 1U);
    const auto header = lexer::normalize(lexer::tokenize_java("for (int i = 0; i < n; i++) {").tokens);
    std::vector<std::string> syms;
    for (const auto& t : header) {
        syms.push_back(t.symbol);
    }
    EXPECT_EQ(detect::compute_tks(header), oracle::tks(syms));
    EXPECT_EQ(detect::compute_tks(header), 11U);  // for ( int $id = $num ; < ++ ) {
}
