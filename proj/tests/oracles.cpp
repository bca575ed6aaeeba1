#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

namespace oracle {

double rnr(const std::vector<std::string>& s) {
    const std::size_t n = s.size();
    std::vector<bool> covered(n, false);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t p = 1; i + 2 * p <= n; ++p) {
            bool square = true;
            for (std::size_t k = 0; k < p && square; ++k) {
                square = s[i + k] == s[i + p + k];
            }
            if (square) {
                for (std::size_t k = i; k < i + 2 * p; ++k) {
                    covered[k] = true;
                }
            }
        }
    }
    const auto free = std::count(covered.begin(), covered.end(), false);
    return static_cast<double>(free) / static_cast<double>(n);
}

std::uint32_t tks(const std::vector<std::string>& s) {
    return static_cast<std::uint32_t>(std::set<std::string>(s.begin(), s.end()).size());
}

namespace {

struct Position {
    std::uint32_t file;
    std::uint32_t index;
};

// Context symbol left of / right of an occurrence; file edges are unique.
std::string left_of(const std::vector<std::vector<std::string>>& files, Position p) {
    return p.index == 0 ? "\x01<start " + std::to_string(p.file) + ">" : files[p.file][p.index - 1];
}

std::string right_of(const std::vector<std::vector<std::string>>& files, Position p, std::size_t len) {
    const auto end = p.index + len;
    return end == files[p.file].size() ? "\x01<end " + std::to_string(p.file) + ">" : files[p.file][end];
}

}  // namespace

std::vector<Set> clone_sets(const std::vector<std::vector<std::string>>& files,
                            const cloneblame::detect::DetectorParams& params) {
    std::vector<Position> pos;
    for (std::uint32_t f = 0; f < files.size(); ++f) {
        for (std::uint32_t i = 0; i < files[f].size(); ++i) {
            pos.push_back({f, i});
        }
    }
    const std::size_t n = pos.size();
    const auto at = [&](std::size_t g) -> const std::string& { return files[pos[g].file][pos[g].index]; };
    // lce[a][b] for a < b: common extension length of global positions a, b,
    // not crossing the end of either file. Filled from the back.
    std::vector<std::vector<std::uint16_t>> lce(n + 1, std::vector<std::uint16_t>(n + 1, 0));
    for (std::size_t a = n; a-- > 0;) {
        for (std::size_t b = n; b-- > a + 1;) {
            if (at(a) != at(b)) {
                continue;
            }
            const bool a_next = a + 1 < n && pos[a + 1].file == pos[a].file;
            const bool b_next = b + 1 < n && pos[b + 1].file == pos[b].file;
            lce[a][b] = static_cast<std::uint16_t>(1 + (a_next && b_next ? lce[a + 1][b + 1] : 0));
        }
    }
    std::set<std::vector<std::string>> candidates;
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = a + 1; b < n; ++b) {
            const std::size_t len = lce[a][b];
            if (len < params.min_tokens) {
                continue;
            }
            if (left_of(files, pos[a]) == left_of(files, pos[b])) {
                continue;
            }
            const auto& f = files[pos[a].file];
            candidates.emplace(f.begin() + pos[a].index, f.begin() + pos[a].index + len);
        }
    }

    std::vector<Set> out;
    for (const auto& w : candidates) {
        std::vector<Position> occ;
        for (std::uint32_t f = 0; f < files.size(); ++f) {
            for (std::uint32_t i = 0; i + w.size() <= files[f].size(); ++i) {
                if (std::equal(w.begin(), w.end(), files[f].begin() + i)) {
                    occ.push_back({f, i});
                }
            }
        }
        std::set<std::string> lefts;
        std::set<std::string> rights;
        for (const auto& p : occ) {
            lefts.insert(left_of(files, p));
            rights.insert(right_of(files, p, w.size()));
        }
        if (occ.size() < 2 || lefts.size() < 2 || rights.size() < 2) {
            continue;  // pair-derived candidates are always maximal; re-checked anyway
        }
        if (rnr(w) < params.min_rnr || tks(w) < params.min_tks) {
            continue;
        }
        Set s;
        s.length = static_cast<std::uint32_t>(w.size());
        for (const auto& p : occ) {
            s.instances.push_back({p.file, p.index, p.index + s.length - 1});
        }
        out.push_back(std::move(s));
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Set> as_sets(const std::vector<cloneblame::detect::CloneSet>& sets) {
    std::vector<Set> out;
    for (const auto& cs : sets) {
        Set s;
        s.length = cs.token_length;
        for (const auto& i : cs.instances) {
            s.instances.push_back({i.file_id, i.begin_token, i.end_token});
        }
        std::sort(s.instances.begin(), s.instances.end());
        out.push_back(std::move(s));
    }
    std::sort(out.begin(), out.end());
    return out;
}

double exact_u_p(const std::vector<double>& a, const std::vector<double>& b) {
    std::vector<double> pooled(a);
    pooled.insert(pooled.end(), b.begin(), b.end());
    const std::size_t n = pooled.size();
    const std::size_t n1 = a.size();
    // U statistic straight from pair comparisons, doubled to stay integral.
    const auto doubled_u = [&](std::uint32_t mask) {
        long long u = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (!(mask >> i & 1U)) {
                continue;
            }
            for (std::size_t j = 0; j < n; ++j) {
                if (mask >> j & 1U) {
                    continue;
                }
                u += pooled[i] > pooled[j] ? 2 : (pooled[i] == pooled[j] ? 1 : 0);
            }
        }
        return u;
    };
    const long long center = static_cast<long long>(n1 * (n - n1));  // doubled n1 n2 / 2
    const long long observed = std::llabs(doubled_u((1U << n1) - 1U) - center);
    std::size_t extreme = 0;
    std::size_t total = 0;
    for (std::uint32_t mask = 0; mask < (1U << n); ++mask) {
        if (static_cast<std::size_t>(__builtin_popcount(mask)) != n1) {
            continue;
        }
        ++total;
        if (std::llabs(doubled_u(mask) - center) >= observed) {
            ++extreme;
        }
    }
    return static_cast<double>(extreme) / static_cast<double>(total);
}

double naive_median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const auto n = v.size();
    return n % 2 ? v[n / 2] : (v[n / 2 - 1] + v[n / 2]) / 2;
}

std::vector<std::vector<std::string>> random_corpus(std::mt19937_64& rng, std::uint32_t files, std::uint32_t max_len,
                                                    std::uint32_t alphabet) {
    std::uniform_int_distribution<std::uint32_t> sym(0, alphabet - 1);
    std::uniform_int_distribution<std::uint32_t> len(1, max_len);
    std::vector<std::vector<std::string>> corpus(files);
    for (auto& f : corpus) {
        const auto n = len(rng);
        for (std::uint32_t i = 0; i < n; ++i) {
            f.push_back("s" + std::to_string(sym(rng)));
        }
    }
    // Plant a few copied stretches, some with a mutated edge.
    std::uniform_int_distribution<int> plants(0, 4);
    const int k = plants(rng);
    for (int p = 0; p < k; ++p) {
        auto& from = corpus[std::uniform_int_distribution<std::uint32_t>(0, files - 1)(rng)];
        auto& to = corpus[std::uniform_int_distribution<std::uint32_t>(0, files - 1)(rng)];
        if (from.size() < 4) {
            continue;
        }
        const auto b = std::uniform_int_distribution<std::size_t>(0, from.size() - 2)(rng);
        const auto e = std::uniform_int_distribution<std::size_t>(b + 1, from.size())(rng);
        std::vector<std::string> chunk(from.begin() + b, from.begin() + e);
        if (to.size() + chunk.size() > max_len) {
            continue;
        }
        if (!chunk.empty() && std::bernoulli_distribution(0.3)(rng)) {
            chunk.back() = "s" + std::to_string(sym(rng));
        }
        const auto at = std::uniform_int_distribution<std::size_t>(0, to.size())(rng);
        to.insert(to.begin() + at, chunk.begin(), chunk.end());
    }
    return corpus;
}

std::vector<cloneblame::detect::TokenFile> token_files(const std::vector<std::vector<std::string>>& files) {
    std::vector<cloneblame::detect::TokenFile> out;
    for (std::uint32_t f = 0; f < files.size(); ++f) {
        cloneblame::detect::TokenFile tf;
        tf.file_id = f;
        for (std::uint32_t i = 0; i < files[f].size(); ++i) {
            tf.tokens.push_back({files[f][i], i});
            tf.lines.push_back(i / 3 + 1);
        }
        out.push_back(std::move(tf));
    }
    return out;
}

}  // namespace oracle
