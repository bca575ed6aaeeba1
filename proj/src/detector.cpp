#include "cloneblame/detector.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <tuple>
#include <string>
#include <unordered_map>

namespace cloneblame::detect {

namespace {

constexpr std::uint32_t kNoFile = std::numeric_limits<std::uint32_t>::max();

// Concatenation of all files with one unique separator after each file.
struct Corpus {
    std::vector<Symbol> text;
    std::vector<std::uint32_t> file_index;  // kNoFile on separators
    std::vector<std::uint32_t> offset;      // position inside the file
};

Corpus build_corpus(std::span<const TokenFile> files) {
    std::unordered_map<std::string, Symbol> ids;
    std::size_t total = files.size();
    for (const auto& f : files) {
        total += f.tokens.size();
    }
    Corpus corpus;
    corpus.text.reserve(total);
    corpus.file_index.reserve(total);
    corpus.offset.reserve(total);
    for (std::size_t f = 0; f < files.size(); ++f) {
        for (std::size_t i = 0; i < files[f].tokens.size(); ++i) {
            auto [it, inserted] = ids.try_emplace(files[f].tokens[i].symbol, static_cast<Symbol>(ids.size()));
            corpus.text.push_back(it->second);
            corpus.file_index.push_back(static_cast<std::uint32_t>(f));
            corpus.offset.push_back(static_cast<std::uint32_t>(i));
        }
        corpus.text.push_back(0);  // patched below once the alphabet is known
        corpus.file_index.push_back(kNoFile);
        corpus.offset.push_back(0);
    }
    auto separator = static_cast<Symbol>(ids.size());
    for (std::size_t i = 0; i < corpus.text.size(); ++i) {
        if (corpus.file_index[i] == kNoFile) {
            corpus.text[i] = separator++;
        }
    }
    return corpus;
}

struct Interval {
    std::uint32_t length;
    std::uint32_t lb;
    std::uint32_t rb;
};

// Bottom-up traversal of the lcp-interval tree. Every interval is
// right-maximal; an interval is kept when it is also left-maximal.
std::vector<Interval> maximal_repeat_intervals(const Corpus& corpus, std::span<const std::uint32_t> sa,
                                               std::span<const std::uint32_t> lcp, std::uint32_t min_length) {
    const std::size_t n = sa.size();
    std::vector<Interval> out;
    auto left_symbol = [&](std::uint32_t pos) {
        return pos == 0 ? std::numeric_limits<Symbol>::max() : corpus.text[pos - 1];
    };
    auto consider = [&](std::uint32_t length, std::uint32_t lb, std::uint32_t rb) {
        if (length < min_length) {
            return;
        }
        const Symbol first = left_symbol(sa[lb]);
        for (std::uint32_t k = lb + 1; k <= rb; ++k) {
            if (left_symbol(sa[k]) != first) {
                out.push_back({length, lb, rb});
                return;
            }
        }
    };

    struct Entry {
        std::uint32_t lcp;
        std::uint32_t lb;
    };
    std::vector<Entry> stack{{0, 0}};
    for (std::size_t i = 1; i <= n; ++i) {
        const std::uint32_t cur = i < n ? lcp[i] : 0;
        auto lb = static_cast<std::uint32_t>(i - 1);
        while (cur < stack.back().lcp) {
            const Entry top = stack.back();
            stack.pop_back();
            consider(top.lcp, top.lb, static_cast<std::uint32_t>(i - 1));
            lb = top.lb;
        }
        if (cur > stack.back().lcp) {
            stack.push_back({cur, lb});
        }
    }
    return out;
}

template <typename SuffixFn, typename LcpFn>
std::vector<CloneSet> detect_with(std::span<const TokenFile> files, const DetectorParams& params, SuffixFn make_sa,
                                  LcpFn make_lcp) {
    params.validate();
    for (const auto& f : files) {
        if (f.lines.size() != f.tokens.size()) {
            throw std::invalid_argument("token file has mismatched line table");
        }
    }
    const Corpus corpus = build_corpus(files);
    const auto sa = make_sa(std::span<const Symbol>(corpus.text));
    const auto lcp = make_lcp(std::span<const Symbol>(corpus.text), std::span<const std::uint32_t>(sa));
    const auto intervals = maximal_repeat_intervals(corpus, sa, lcp, params.min_tokens);

    std::vector<CloneSet> sets(intervals.size());
    std::vector<char> keep(intervals.size(), 0);
    const auto count = static_cast<std::int64_t>(intervals.size());
#pragma omp parallel for schedule(dynamic, 16)
    for (std::int64_t k = 0; k < count; ++k) {
        const Interval& iv = intervals[k];
        const std::span<const Symbol> sequence(corpus.text.data() + sa[iv.lb], iv.length);
        if (compute_tks(sequence) < params.min_tks || compute_rnr(sequence) < params.min_rnr) {
            continue;
        }
        CloneSet& set = sets[k];
        set.token_length = iv.length;
        set.instances.reserve(iv.rb - iv.lb + 1);
        for (std::uint32_t r = iv.lb; r <= iv.rb; ++r) {
            const std::uint32_t pos = sa[r];
            const TokenFile& file = files[corpus.file_index[pos]];
            const std::uint32_t begin = corpus.offset[pos];
            const std::uint32_t end = begin + iv.length - 1;
            set.instances.push_back({file.file_id, file.lines[begin], file.lines[end], begin, end});
        }
        std::sort(set.instances.begin(), set.instances.end(), [](const CloneInstance& a, const CloneInstance& b) {
            return std::tie(a.file_id, a.begin_token) < std::tie(b.file_id, b.begin_token);
        });
        keep[k] = 1;
    }

    std::vector<CloneSet> result;
    result.reserve(sets.size());
    for (std::size_t k = 0; k < sets.size(); ++k) {
        if (keep[k]) {
            result.push_back(std::move(sets[k]));
        }
    }
    std::sort(result.begin(), result.end(), [](const CloneSet& a, const CloneSet& b) {
        const auto& x = a.instances.front();
        const auto& y = b.instances.front();
        if (x.file_id != y.file_id) {
            return x.file_id < y.file_id;
        }
        if (x.begin_token != y.begin_token) {
            return x.begin_token < y.begin_token;
        }
        return a.token_length > b.token_length;
    });
    for (std::size_t k = 0; k < result.size(); ++k) {
        result[k].id = static_cast<std::uint32_t>(k + 1);
    }
    return result;
}

std::vector<Symbol> intern(std::span<const NormalizedToken> fragment) {
    std::unordered_map<std::string_view, Symbol> ids;
    std::vector<Symbol> out;
    out.reserve(fragment.size());
    for (const auto& t : fragment) {
        out.push_back(ids.try_emplace(t.symbol, static_cast<Symbol>(ids.size())).first->second);
    }
    return out;
}

}  // namespace

void DetectorParams::validate() const {
    if (min_tokens < 1) {
        throw std::invalid_argument("min_tokens must be at least 1");
    }
    if (!(min_rnr >= 0.0 && min_rnr <= 1.0)) {
        throw std::invalid_argument("min_rnr must lie in [0, 1]");
    }
    if (min_tks < 1) {
        throw std::invalid_argument("min_tks must be at least 1");
    }
}

TokenFile make_token_file(FileId file_id, std::span<const lexer::Token> tokens) {
    TokenFile file;
    file.file_id = file_id;
    file.tokens = lexer::normalize(tokens);
    file.lines.reserve(tokens.size());
    for (const auto& t : tokens) {
        file.lines.push_back(t.line);
    }
    return file;
}

double CloneSet::mean_length_loc() const {
    if (instances.empty()) {
        return 0.0;
    }
    double sum = 0.0;
    for (const auto& inst : instances) {
        sum += inst.length_loc();
    }
    return sum / static_cast<double>(instances.size());
}

std::vector<CloneSet> detect_clone_sets(std::span<const TokenFile> files, const DetectorParams& params) {
    return detect_with(
        files, params, [](std::span<const Symbol> t) { return suffix_array(t); },
        [](std::span<const Symbol> t, std::span<const std::uint32_t> sa) { return lcp_array(t, sa); });
}

std::vector<CloneSet> detect_clone_sets_serial(std::span<const TokenFile> files, const DetectorParams& params) {
    return detect_with(
        files, params, [](std::span<const Symbol> t) { return suffix_array_serial(t); },
        [](std::span<const Symbol> t, std::span<const std::uint32_t> sa) { return lcp_array_serial(t, sa); });
}

double compute_rnr(std::span<const Symbol> s) {
    const std::size_t n = s.size();
    if (n == 0) {
        throw std::invalid_argument("compute_rnr: empty fragment");
    }
    // For period p, a maximal run [a, b) of s[j] == s[j + p] that is at least
    // p long contains tandem repeats whose union is exactly [a, b + p).
    std::vector<std::int32_t> delta(n + 1, 0);
    for (std::size_t p = 1; 2 * p <= n; ++p) {
        std::size_t j = 0;
        while (j + p < n) {
            if (s[j] != s[j + p]) {
                ++j;
                continue;
            }
            const std::size_t a = j;
            while (j + p < n && s[j] == s[j + p]) {
                ++j;
            }
            if (j - a >= p) {
                ++delta[a];
                --delta[j + p];
            }
        }
    }
    std::size_t uncovered = 0;
    std::int32_t depth = 0;
    for (std::size_t i = 0; i < n; ++i) {
        depth += delta[i];
        if (depth == 0) {
            ++uncovered;
        }
    }
    return static_cast<double>(uncovered) / static_cast<double>(n);
}

double compute_rnr(std::span<const NormalizedToken> fragment) {
    const auto symbols = intern(fragment);
    return compute_rnr(std::span<const Symbol>(symbols));
}

std::uint32_t compute_tks(std::span<const Symbol> fragment) {
    std::vector<Symbol> sorted(fragment.begin(), fragment.end());
    std::sort(sorted.begin(), sorted.end());
    return static_cast<std::uint32_t>(std::unique(sorted.begin(), sorted.end()) - sorted.begin());
}

std::uint32_t compute_tks(std::span<const NormalizedToken> fragment) {
    const auto symbols = intern(fragment);
    return compute_tks(std::span<const Symbol>(symbols));
}

}  // namespace cloneblame::detect
