#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <set>
#include <stdexcept>

#include "cloneblame/errors.hpp"
#include "cloneblame/harness.hpp"
#include "cloneblame/lexer.hpp"
#include "cloneblame/pipeline.hpp"
#include "cloneblame/process.hpp"

namespace cloneblame::harness {

namespace fs = std::filesystem;

namespace {

struct SimLine {
    std::string text;
    std::string author;
};

using SimFiles = std::map<std::string, std::vector<SimLine>>;

std::vector<std::string> split_lines(std::string_view content) {
    std::vector<std::string> lines;
    std::size_t start = 0;
    while (start < content.size()) {
        const auto nl = content.find('\n', start);
        if (nl == std::string_view::npos) {
            lines.emplace_back(content.substr(start));
            break;
        }
        lines.emplace_back(content.substr(start, nl - start));
        start = nl + 1;
    }
    return lines;
}

std::string strip_tag(std::string_view line) {
    const auto pos = line.rfind(kLineTag);
    if (pos == std::string_view::npos) {
        return std::string(line);
    }
    const auto digits = line.substr(pos + kLineTag.size());
    if (digits.empty() || !std::all_of(digits.begin(), digits.end(), [](unsigned char c) { return std::isdigit(c); })) {
        return std::string(line);
    }
    return std::string(line.substr(0, pos));
}

class Replayer {
public:
    explicit Replayer(const GenerateOptions& options) : options_(options) {}

    // Applies one event; returns the path it wrote.
    const std::string& apply(const Event& event) {
        if (const auto* c = std::get_if<CreateFile>(&event)) {
            if (files_.count(c->path) != 0) {
                throw std::invalid_argument("create of existing file " + c->path);
            }
            auto& lines = files_[c->path];
            for (const auto& l : split_lines(c->content)) {
                lines.push_back({tag(l), c->author});
            }
            return c->path;
        }
        if (const auto* e = std::get_if<EditLines>(&event)) {
            auto& lines = existing(e->path);
            const auto n = lines.size();
            if (e->begin < 1 || e->begin > n + 1 || e->end + 1 < e->begin || e->end > n) {
                throw std::invalid_argument("edit range " + std::to_string(e->begin) + "-" + std::to_string(e->end) +
                                            " invalid for " + e->path);
            }
            std::vector<SimLine> fresh;
            for (const auto& l : split_lines(e->content)) {
                fresh.push_back({tag(l), e->author});
            }
            lines.erase(lines.begin() + (e->begin - 1), lines.begin() + e->end);
            lines.insert(lines.begin() + (e->begin - 1), fresh.begin(), fresh.end());
            return e->path;
        }
        const auto& c = std::get<CopySnippet>(event);
        const auto& src = existing(c.src);
        if (c.begin < 1 || c.end < c.begin || c.end > src.size()) {
            throw std::invalid_argument("copy range " + std::to_string(c.begin) + "-" + std::to_string(c.end) +
                                        " invalid for " + c.src);
        }
        std::vector<SimLine> copied;
        for (auto i = c.begin; i <= c.end; ++i) {
            copied.push_back({tag(rename_identifiers(strip_tag(src[i - 1].text), c.rename_suffix)), c.author});
        }
        auto& dst = existing(c.dst);
        if (c.insert_line < 1 || c.insert_line > dst.size() + 1) {
            throw std::invalid_argument("copy insert line " + std::to_string(c.insert_line) + " invalid for " + c.dst);
        }
        dst.insert(dst.begin() + (c.insert_line - 1), copied.begin(), copied.end());
        return c.dst;
    }

    const SimFiles& files() const { return files_; }

    std::string content(const std::string& path) const {
        std::string out;
        for (const auto& l : files_.at(path)) {
            out += l.text;
            out += '\n';
        }
        return out;
    }

private:
    std::vector<SimLine>& existing(const std::string& path) {
        const auto it = files_.find(path);
        if (it == files_.end()) {
            throw std::invalid_argument("event references missing file " + path);
        }
        return it->second;
    }

    std::string tag(std::string_view line) {
        if (!options_.unique_line_tags) {
            return std::string(line);
        }
        return strip_tag(line) + std::string(kLineTag) + std::to_string(++serial_);
    }

    const GenerateOptions& options_;
    SimFiles files_;
    std::uint64_t serial_ = 0;
};

std::optional<std::uint32_t> family_marker(std::string_view line) {
    const auto pos = line.find(kFamilyMarker);
    if (pos == std::string_view::npos) {
        return std::nullopt;
    }
    std::uint32_t value = 0;
    std::size_t i = pos + kFamilyMarker.size();
    const std::size_t first = i;
    while (i < line.size() && std::isdigit(static_cast<unsigned char>(line[i]))) {
        value = value * 10 + static_cast<std::uint32_t>(line[i] - '0');
        ++i;
    }
    if (i == first) {
        return std::nullopt;
    }
    return value;
}

struct Occurrence {
    std::size_t file = 0;  // index into truth.files
    std::uint32_t begin_line = 0;
    std::uint32_t end_line = 0;
    std::uint32_t marker = 0;
    std::string left;
    std::string right;
    std::vector<lexer::NormalizedToken> tokens;
};

GroundTruth truth_from(const SimFiles& files, const GenerateOptions& options) {
    GroundTruth truth;
    truth.params = options.params;
    std::vector<std::string> all;
    for (const auto& [path, lines] : files) {
        all.push_back(path);
        auto& authors = truth.line_authors[path];
        for (const auto& l : lines) {
            authors.push_back(l.author);
        }
    }
    truth.files = report::filter_target_paths(all);

    std::map<std::vector<std::string>, std::vector<Occurrence>> groups;
    for (std::size_t fi = 0; fi < truth.files.size(); ++fi) {
        const auto& path = truth.files[fi];
        const auto& lines = files.at(path);
        truth.total_lines += lines.size();
        std::string content;
        for (const auto& l : lines) {
            content += l.text;
            content += '\n';
        }
        const auto tokens = lexer::tokenize_java(content, static_cast<lexer::FileId>(fi)).tokens;
        const auto normalized = lexer::normalize(tokens);

        std::uint32_t line = 1;
        while (line <= lines.size()) {
            const auto marker = family_marker(lines[line - 1].text);
            if (!marker) {
                ++line;
                continue;
            }
            Occurrence occ;
            occ.file = fi;
            occ.marker = *marker;
            occ.begin_line = line;
            while (line <= lines.size() && family_marker(lines[line - 1].text) == marker) {
                ++line;
            }
            occ.end_line = line - 1;
            const auto first = std::find_if(tokens.begin(), tokens.end(),
                                            [&](const lexer::Token& t) { return t.line >= occ.begin_line; });
            const auto last = std::find_if(first, tokens.end(),
                                           [&](const lexer::Token& t) { return t.line > occ.end_line; });
            if (first == last) {
                continue;
            }
            const auto b = static_cast<std::size_t>(first - tokens.begin());
            const auto e = static_cast<std::size_t>(last - tokens.begin());
            occ.tokens.assign(normalized.begin() + static_cast<std::ptrdiff_t>(b),
                              normalized.begin() + static_cast<std::ptrdiff_t>(e));
            occ.left = b > 0 ? normalized[b - 1].symbol : "\x01start " + path;
            occ.right = e < normalized.size() ? normalized[e].symbol : "\x01end " + path;
            std::vector<std::string> key;
            for (const auto& t : occ.tokens) {
                key.push_back(t.symbol);
            }
            groups[key].push_back(std::move(occ));
        }
    }

    std::vector<std::vector<bool>> clone(truth.files.size());
    for (std::size_t fi = 0; fi < truth.files.size(); ++fi) {
        clone[fi].assign(files.at(truth.files[fi]).size(), false);
    }
    for (auto& [key, occs] : groups) {
        FamilyTruth fam;
        std::set<std::uint32_t> markers;
        for (const auto& o : occs) {
            markers.insert(o.marker);
        }
        fam.markers.assign(markers.begin(), markers.end());
        fam.occurrences = occs.size();
        fam.token_length = static_cast<std::uint32_t>(key.size());
        fam.rnr = detect::compute_rnr(occs.front().tokens);
        fam.tks = detect::compute_tks(occs.front().tokens);
        if (occs.size() >= 2) {
            std::set<std::string> lefts;
            std::set<std::string> rights;
            for (const auto& o : occs) {
                lefts.insert(o.left);
                rights.insert(o.right);
            }
            if (lefts.size() != occs.size() || rights.size() != occs.size()) {
                throw std::invalid_argument("family " + std::to_string(occs.front().marker) +
                                            ": occurrences share a neighbouring token, so the clone would extend");
            }
            fam.reported = fam.token_length >= options.params.min_tokens && fam.rnr >= options.params.min_rnr &&
                           fam.tks >= options.params.min_tks;
        }
        truth.families.push_back(fam);
        if (!fam.reported) {
            continue;
        }
        std::sort(occs.begin(), occs.end(), [](const Occurrence& a, const Occurrence& b) {
            return std::tie(a.file, a.begin_line) < std::tie(b.file, b.begin_line);
        });
        ExpectedCloneSet set;
        set.token_length = fam.token_length;
        std::set<std::string> leaders;
        std::set<std::string> line_authors;
        for (const auto& o : occs) {
            const auto& path = truth.files[o.file];
            const auto& lines = files.at(path);
            std::map<std::string, std::uint32_t> counts;
            for (auto l = o.begin_line; l <= o.end_line; ++l) {
                ++counts[lines[l - 1].author];
                line_authors.insert(lines[l - 1].author);
                clone[o.file][l - 1] = true;
            }
            ExpectedInstance inst{path, o.begin_line, o.end_line, {}, 0, false};
            for (const auto& [author, n] : counts) {
                if (n > inst.leader_lines) {
                    inst.leader = author;
                    inst.leader_lines = n;
                    inst.tie = false;
                } else if (n == inst.leader_lines) {
                    inst.tie = true;
                }
            }
            leaders.insert(inst.leader);
            set.instances.push_back(std::move(inst));
        }
        set.kind = leaders.size() == 1 ? authorship::CloneSetKind::SingleLeader : authorship::CloneSetKind::MultiLeader;
        set.purely_single_author = line_authors.size() == 1;
        truth.clone_sets.push_back(std::move(set));
    }
    std::sort(truth.clone_sets.begin(), truth.clone_sets.end(), [&](const ExpectedCloneSet& a, const ExpectedCloneSet& b) {
        const auto& x = a.instances.front();
        const auto& y = b.instances.front();
        return std::tie(x.file, x.begin_line) < std::tie(y.file, y.begin_line);
    });

    std::map<std::string, authorship::AuthorContribution> by_author;
    for (std::size_t fi = 0; fi < truth.files.size(); ++fi) {
        const auto& lines = files.at(truth.files[fi]);
        for (std::size_t l = 0; l < lines.size(); ++l) {
            auto& c = by_author[lines[l].author];
            c.author = lines[l].author;
            if (clone[fi][l]) {
                ++c.clone_lines;
                ++truth.clone_lines;
            } else {
                ++c.nonclone_lines;
                ++truth.nonclone_lines;
            }
        }
    }
    for (auto& [name, c] : by_author) {
        truth.authors.push_back(std::move(c));
    }
    std::stable_sort(truth.authors.begin(), truth.authors.end(),
                     [](const auto& a, const auto& b) { return a.total() > b.total(); });
    return truth;
}

std::string email_for(const std::string& name) {
    std::string local;
    for (const unsigned char c : name) {
        if (std::isalnum(c) && c < 0x80) {
            local += static_cast<char>(std::tolower(c));
        } else if (!local.empty() && local.back() != '.') {
            local += '.';
        }
    }
    while (!local.empty() && local.back() == '.') {
        local.pop_back();
    }
    return (local.empty() ? std::string("author") : local) + "@example.com";
}

void git_or_throw(const std::string& repo, const std::vector<std::string>& args, const EnvOverrides& env = {}) {
    const auto r = run_git(repo, args, env);
    if (r.exit_code != 0) {
        std::string cmd = "git";
        for (const auto& a : args) {
            cmd += ' ' + a;
        }
        throw Error(cmd + " failed (" + std::to_string(r.exit_code) + "): " + r.err);
    }
}

std::string event_summary(const Event& event) {
    if (const auto* c = std::get_if<CreateFile>(&event)) {
        return "Add " + fs::path(c->path).filename().string();
    }
    if (const auto* e = std::get_if<EditLines>(&event)) {
        return "Edit " + fs::path(e->path).filename().string();
    }
    const auto& c = std::get<CopySnippet>(event);
    return "Copy code into " + fs::path(c.dst).filename().string();
}

}  // namespace

std::map<std::string, std::string> replay_contents(const HistoryScript& script, const GenerateOptions& options) {
    Replayer replay(options);
    for (const auto& e : script.events) {
        replay.apply(e);
    }
    std::map<std::string, std::string> out;
    for (const auto& [path, lines] : replay.files()) {
        out[path] = replay.content(path);
    }
    return out;
}

GroundTruth derive_truth(const HistoryScript& script, const GenerateOptions& options) {
    Replayer replay(options);
    for (const auto& e : script.events) {
        replay.apply(e);
    }
    return truth_from(replay.files(), options);
}

GeneratedRepo generate_repo(const HistoryScript& script, const std::string& workdir, const GenerateOptions& options) {
    fs::create_directories(workdir);
    if (!fs::is_empty(workdir)) {
        throw std::invalid_argument("harness workdir is not empty: " + workdir);
    }
    git_or_throw(workdir, {"-c", "init.defaultBranch=main", "init", "-q"});
    Replayer replay(options);
    std::int64_t when = options.start_time;
    for (std::size_t i = 0; i < script.events.size(); ++i) {
        const auto& event = script.events[i];
        const auto& path = replay.apply(event);
        const auto target = fs::path(workdir) / path;
        fs::create_directories(target.parent_path());
        {
            std::ofstream out(target, std::ios::binary | std::ios::trunc);
            out << replay.content(path);
            if (!out) {
                throw Error("cannot write " + target.string());
            }
        }
        const std::string author = std::visit([](const auto& e) { return e.author; }, event);
        const std::string date = "@" + std::to_string(when) + " +0000";
        when += options.time_step;
        const EnvOverrides env{{"GIT_AUTHOR_NAME", author},      {"GIT_AUTHOR_EMAIL", email_for(author)},
                               {"GIT_AUTHOR_DATE", date},        {"GIT_COMMITTER_NAME", author},
                               {"GIT_COMMITTER_EMAIL", email_for(author)}, {"GIT_COMMITTER_DATE", date},
                               {"GIT_CONFIG_NOSYSTEM", "1"}};
        git_or_throw(workdir, {"-c", "core.autocrlf=false", "add", "--", path}, env);
        git_or_throw(workdir,
                     {"-c", "commit.gpgsign=false", "-c", "core.autocrlf=false", "commit", "-q", "--no-verify",
                      "--allow-empty", "-m", event_summary(event)},
                     env);
    }
    return {fs::weakly_canonical(fs::absolute(workdir)).string(), truth_from(replay.files(), options)};
}

std::vector<std::string> verify(const std::string& repo, const GroundTruth& truth, const report::ProjectReport& report) {
    std::vector<std::string> out;
    const auto expected_repo = fs::weakly_canonical(fs::absolute(repo)).string();
    if (report.repo != expected_repo) {
        out.push_back("report is for " + report.repo + ", expected " + expected_repo);
    }
    if (!(report.params == truth.params)) {
        out.push_back("report was produced with different detector parameters");
    }
    if (report.files != truth.files) {
        out.push_back("analyzed files differ: " + std::to_string(report.files.size()) + " vs " +
                      std::to_string(truth.files.size()) + " expected");
    }
    for (const auto& s : report.skipped) {
        out.push_back("file skipped: " + s.path + " (" + s.reason + ")");
    }

    using SpanKey = std::vector<std::tuple<std::string, std::uint32_t, std::uint32_t>>;
    const auto describe = [](const SpanKey& key) {
        std::string s = "{";
        for (const auto& [file, b, e] : key) {
            s += (s.size() > 1 ? ", " : "") + file + ":" + std::to_string(b) + "-" + std::to_string(e);
        }
        return s + "}";
    };
    std::map<SpanKey, const ExpectedCloneSet*> expected;
    for (const auto& s : truth.clone_sets) {
        SpanKey key;
        for (const auto& i : s.instances) {
            key.emplace_back(i.file, i.begin_line, i.end_line);
        }
        std::sort(key.begin(), key.end());
        expected[key] = &s;
    }
    std::set<SpanKey> seen;
    for (const auto& s : report.clone_sets) {
        std::vector<const report::InstanceRecord*> instances;
        for (const auto& i : s.instances) {
            instances.push_back(&i);
        }
        std::sort(instances.begin(), instances.end(), [](const auto* a, const auto* b) {
            return std::tie(a->file, a->begin_line, a->end_line) < std::tie(b->file, b->begin_line, b->end_line);
        });
        SpanKey key;
        for (const auto* i : instances) {
            key.emplace_back(i->file, i->begin_line, i->end_line);
        }
        const auto it = expected.find(key);
        if (it == expected.end()) {
            out.push_back("unexpected clone set " + describe(key));
            continue;
        }
        seen.insert(key);
        const auto& want = *it->second;
        if (s.token_length != want.token_length) {
            out.push_back("clone set " + describe(key) + ": token length " + std::to_string(s.token_length) +
                          ", expected " + std::to_string(want.token_length));
        }
        std::vector<const ExpectedInstance*> wanted;
        for (const auto& i : want.instances) {
            wanted.push_back(&i);
        }
        std::sort(wanted.begin(), wanted.end(), [](const auto* a, const auto* b) {
            return std::tie(a->file, a->begin_line, a->end_line) < std::tie(b->file, b->begin_line, b->end_line);
        });
        for (std::size_t k = 0; k < instances.size(); ++k) {
            const auto& got = *instances[k];
            const auto& exp = *wanted[k];
            const auto where = got.file + ":" + std::to_string(got.begin_line) + "-" + std::to_string(got.end_line);
            if (got.leader != exp.leader || got.tie != exp.tie || got.leader_lines != exp.leader_lines) {
                out.push_back("instance " + where + ": leader " + got.leader + " (" + std::to_string(got.leader_lines) +
                              (got.tie ? " lines, tie)" : " lines)") + ", expected " + exp.leader + " (" +
                              std::to_string(exp.leader_lines) + (exp.tie ? " lines, tie)" : " lines)"));
            }
        }
        if (s.kind != want.kind) {
            out.push_back("clone set " + describe(key) + ": " + authorship::to_string(s.kind) + ", expected " +
                          authorship::to_string(want.kind));
        }
        if (s.purely_single_author != want.purely_single_author) {
            out.push_back("clone set " + describe(key) + ": purely single author " +
                          (s.purely_single_author ? "true" : "false") + ", expected " +
                          (want.purely_single_author ? "true" : "false"));
        }
    }
    for (const auto& [key, set] : expected) {
        if (seen.count(key) == 0) {
            out.push_back("missing clone set " + describe(key));
        }
    }

    std::map<std::string, std::pair<std::uint64_t, std::uint64_t>> got_authors;
    for (const auto& a : report.authors) {
        got_authors[a.author] = {a.clone_lines, a.nonclone_lines};
    }
    std::map<std::string, std::pair<std::uint64_t, std::uint64_t>> want_authors;
    for (const auto& a : truth.authors) {
        want_authors[a.author] = {a.clone_lines, a.nonclone_lines};
    }
    for (const auto& [name, want] : want_authors) {
        const auto it = got_authors.find(name);
        const auto got = it == got_authors.end() ? std::pair<std::uint64_t, std::uint64_t>{0, 0} : it->second;
        if (got != want) {
            out.push_back("author " + name + ": " + std::to_string(got.first) + " clone / " +
                          std::to_string(got.second) + " non-clone lines, expected " + std::to_string(want.first) +
                          " / " + std::to_string(want.second));
        }
    }
    for (const auto& [name, got] : got_authors) {
        if (want_authors.count(name) == 0) {
            out.push_back("unexpected author " + name);
        }
    }
    const auto& m = report.metrics;
    if (m.total_lines != truth.total_lines || m.clone_lines != truth.clone_lines ||
        m.nonclone_lines != truth.nonclone_lines) {
        out.push_back("line totals " + std::to_string(m.clone_lines) + "+" + std::to_string(m.nonclone_lines) + "=" +
                      std::to_string(m.total_lines) + ", expected " + std::to_string(truth.clone_lines) + "+" +
                      std::to_string(truth.nonclone_lines) + "=" + std::to_string(truth.total_lines));
    }
    return out;
}

}  // namespace cloneblame::harness
