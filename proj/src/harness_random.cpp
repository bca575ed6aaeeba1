#include <algorithm>
#include <random>
#include <set>

#include "cloneblame/harness.hpp"
#include "cloneblame/lexer.hpp"

namespace cloneblame::harness {

namespace {

// Method declarations are split over two lines: a fence holding modifiers
// and return type, then "name(params) {". The fence's last token and the
// next fence's first token border every snippet, so keeping them distinct
// within a family pins each clone to exactly the snippet lines.
constexpr std::string_view kModifiers[] = {"public",   "private", "protected", "static",      "final", "synchronized",
                                           "abstract", "native",  "strictfp",  "@Deprecated", "<T>"};
constexpr std::string_view kReturns[] = {"void", "int",     "long",   "short", "byte",  "char",
                                         "boolean", "float", "double", "String", "int[]", "List<String>"};
constexpr std::size_t kModifierCount = std::size(kModifiers);
constexpr std::size_t kReturnCount = std::size(kReturns);

constexpr std::string_view kWords[] = {"count",  "total",  "buffer", "index", "offset", "limit",  "value",  "result",
                                       "name",   "node",   "entry",  "cursor", "width", "height", "delta",  "score",
                                       "level",  "weight", "amount", "price",  "state", "flag",   "queue",  "stack",
                                       "token",  "chunk",  "record", "field",  "label", "target", "origin", "margin"};
constexpr std::string_view kTypes[] = {"int",     "long",         "double",       "String",
                                       "boolean", "char",         "float",        "Object",
                                       "int[]",   "List<String>", "StringBuilder", "Map<String, Integer>"};
constexpr std::string_view kClasses[] = {"ArrayList", "StringBuilder", "HashMap", "Random", "Point", "Range", "Window"};
constexpr std::string_view kExceptions[] = {"IllegalStateException", "IllegalArgumentException", "RuntimeException",
                                            "UnsupportedOperationException"};
constexpr std::string_view kBinary[] = {"+", "-", "*", "/", "%", "<<", ">>", ">>>", "&", "|", "^"};
constexpr std::string_view kRelational[] = {"<", ">", "<=", ">=", "==", "!="};
constexpr std::string_view kCompound[] = {"+=", "-=", "*=", "/=", "%=", "<<=", ">>=", "&=", "|=", "^="};
constexpr std::string_view kFileNames[] = {"Ledger",   "Router",   "Parser",  "Planner",  "Catalog", "Scanner",
                                           "Invoice",  "Archive",  "Tracker", "Builder",  "Registry", "Monitor",
                                           "Profile",  "Gateway",  "Journal", "Matrix",   "Payment", "Session"};
constexpr std::string_view kAuthors[] = {"Alice Archer", "Bruno Costa", "Chen Wei",     "Dana Novak",
                                         "Emeka Obi",    "Farah Haddad", "Goran Ilic",  "Hana Sato"};
constexpr std::string_view kUtf8Author = "Zo\xc3\xab \xc3\x85ngstr\xc3\xb6m";

std::string first_symbol(std::string_view text) {
    const auto tokens = lexer::tokenize_java(text).tokens;
    return lexer::normalized_symbol(tokens.front());
}

std::string last_symbol(std::string_view text) {
    const auto tokens = lexer::tokenize_java(text).tokens;
    return lexer::normalized_symbol(tokens.back());
}

std::size_t token_count(std::string_view line) { return lexer::tokenize_java(line).tokens.size(); }

std::size_t token_count(const std::vector<std::string>& lines) {
    std::size_t n = 0;
    for (const auto& l : lines) {
        n += token_count(l);
    }
    return n;
}

class CodeGen {
public:
    explicit CodeGen(std::mt19937_64& rng) : rng_(rng) {}

    template <typename T, std::size_t N>
    std::string pick(const T (&items)[N]) {
        return std::string(items[uniform(0, N - 1)]);
    }

    std::size_t uniform(std::size_t lo, std::size_t hi) {
        return std::uniform_int_distribution<std::size_t>(lo, hi)(rng_);
    }
    bool chance(double p) { return std::bernoulli_distribution(p)(rng_); }

    std::string ident() {
        std::string id = pick(kWords);
        if (chance(0.5)) {
            auto second = pick(kWords);
            second[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(second[0])));
            id += second;
        }
        if (chance(0.3)) {
            id += std::to_string(uniform(0, 9));
        }
        return id;
    }

    std::string number() {
        switch (uniform(0, 5)) {
            case 0: return std::to_string(uniform(0, 9));
            case 1: return std::to_string(uniform(10, 4096));
            case 2: return std::to_string(uniform(1, 99)) + "L";
            case 3: return std::to_string(uniform(0, 9)) + "." + std::to_string(uniform(0, 99));
            case 4: return "0x" + std::to_string(uniform(10, 99));
            default: return std::to_string(uniform(100, 999)) + ".0f";
        }
    }

    std::string string_literal() { return "\"" + pick(kWords) + (chance(0.5) ? " " + pick(kWords) : "") + "\""; }

    std::string atom() {
        switch (uniform(0, 11)) {
            case 0:
            case 1:
            case 2: return ident();
            case 3:
            case 4: return number();
            case 5: return string_literal();
            case 6: return "'" + std::string(1, static_cast<char>('a' + uniform(0, 25))) + "'";
            case 7: return chance(0.5) ? "true" : (chance(0.5) ? "false" : "null");
            case 8: return "this." + ident();
            case 9: return ident() + ".length";
            case 10: return ident() + "[" + ident() + "]";
            default: return ident() + "." + ident();
        }
    }

    std::string args(int depth) {
        const auto n = uniform(0, 3);
        std::string out;
        for (std::size_t i = 0; i < n; ++i) {
            out += (i ? ", " : "") + expr(depth);
        }
        return out;
    }

    std::string expr(int depth) {
        if (depth <= 0 || chance(0.35)) {
            return atom();
        }
        switch (uniform(0, 8)) {
            case 0:
            case 1: return expr(depth - 1) + " " + pick(kBinary) + " " + expr(depth - 1);
            case 2: return ident() + "(" + args(depth - 1) + ")";
            case 3: return ident() + "." + ident() + "(" + args(depth - 1) + ")";
            case 4: return std::string(chance(0.5) ? "-" : (chance(0.5) ? "!" : "~")) + atom();
            case 5: return "(" + expr(depth - 1) + ")";
            case 6: return "(" + pick(kTypes) + ") " + atom();
            case 7: return "new " + pick(kClasses) + "(" + args(depth - 1) + ")";
            default: return condition(depth - 1) + " ? " + expr(depth - 1) + " : " + expr(depth - 1);
        }
    }

    std::string condition(int depth) {
        switch (uniform(0, 4)) {
            case 0: return "!" + ident();
            case 1: return ident() + ".isEmpty()";
            case 2: return condition(0) + (chance(0.5) ? " && " : " || ") + expr(std::max(depth - 1, 0)) + " " +
                           pick(kRelational) + " " + atom();
            default: return expr(depth) + " " + pick(kRelational) + " " + expr(depth);
        }
    }

    std::string statement() {
        const int d = static_cast<int>(uniform(1, 3));
        switch (uniform(0, 13)) {
            case 0: return pick(kTypes) + " " + ident() + " = " + expr(d) + ";";
            case 1: return ident() + " = " + expr(d) + ";";
            case 2: return ident() + " " + pick(kCompound) + " " + expr(d) + ";";
            case 3: return ident() + "." + ident() + "(" + args(d) + ");";
            case 4: return chance(0.5) ? ident() + "++;" : "--" + ident() + ";";
            case 5: return "return " + expr(d) + ";";
            case 6: return "if (" + condition(d) + ") " + ident() + " = " + expr(d) + ";";
            case 7: return "throw new " + pick(kExceptions) + "(" + string_literal() + ");";
            case 8: return ident() + "[" + expr(1) + "] = " + expr(d) + ";";
            case 9: return "System.out.println(" + expr(d) + ");";
            case 10: return "assert " + condition(d) + " : " + string_literal() + ";";
            case 11: return ident() + " = " + condition(1) + " ? " + expr(d) + " : " + expr(d) + ";";
            case 12: return "this." + ident() + " = " + expr(d) + ";";
            default: return pick(kClasses) + " " + ident() + " = new " + pick(kClasses) + "(" + args(d) + ");";
        }
    }

    // Statement possibly spanning several lines, each with `indent`.
    std::vector<std::string> block(const std::string& indent) {
        const std::string inner = indent + "    ";
        std::vector<std::string> lines;
        const auto body = [&](std::size_t lo, std::size_t hi) {
            const auto n = uniform(lo, hi);
            for (std::size_t i = 0; i < n; ++i) {
                lines.push_back(inner + statement());
            }
        };
        switch (uniform(0, 5)) {
            case 0:
                lines.push_back(indent + "if (" + condition(2) + ") {");
                body(1, 2);
                if (chance(0.4)) {
                    lines.push_back(indent + "} else {");
                    body(1, 1);
                }
                lines.push_back(indent + "}");
                break;
            case 1: {
                const auto i = pick(kWords).substr(0, 1) + "i";
                lines.push_back(indent + "for (int " + i + " = 0; " + i + " < " + expr(1) + "; " + i + "++) {");
                body(1, 2);
                lines.push_back(indent + "}");
                break;
            }
            case 2:
                lines.push_back(indent + "while (" + condition(1) + ") {");
                body(1, 2);
                lines.push_back(indent + "}");
                break;
            case 3:
                lines.push_back(indent + "try {");
                body(1, 2);
                lines.push_back(indent + "} catch (" + pick(kExceptions) + " " + ident() + ") {");
                body(1, 1);
                lines.push_back(indent + "}");
                break;
            default: lines.push_back(indent + statement());
        }
        return lines;
    }

    // A statement of exactly `tokens` tokens, 1 <= tokens <= 8.
    std::string padding(std::size_t tokens) {
        switch (tokens) {
            case 1: return ";";
            case 2: return "{ }";
            case 3: return ident() + "++;";
            case 4: return ident() + " = " + atom_simple() + ";";
            case 5: return ident() + " = !" + ident() + ";";
            case 6: return ident() + " = " + ident() + " " + pick(kBinary) + " " + number() + ";";
            case 7: return ident() + " = " + ident() + "." + ident() + "();";
            default: return ident() + " = " + ident() + "." + ident() + "(" + ident() + ");";
        }
    }

    std::string atom_simple() { return chance(0.5) ? ident() : number(); }

    std::string params() {
        const auto n = uniform(0, 3);
        std::string out;
        for (std::size_t i = 0; i < n; ++i) {
            out += (i ? ", " : "") + pick(kTypes) + " " + ident();
        }
        return out;
    }

    std::vector<std::string> filler_method() {
        std::vector<std::string> lines{"    " + ident() + "(" + params() + ") {"};
        const auto n = uniform(2, 7);
        for (std::size_t i = 0; i < n; ++i) {
            lines.push_back("        " + statement());
        }
        lines.push_back("    }");
        return lines;
    }

    // Lines of a method whose token count is `target` (approximately when the
    // grammar cannot hit it), each tagged with the family marker.
    std::vector<std::string> snippet_method(std::size_t target, std::uint32_t family) {
        std::vector<std::string> lines{"    " + ident() + "(" + params() + ") {"};
        std::size_t count = token_count(lines.front()) + 1;  // + closing brace
        int misses = 0;
        while (count + 8 < target && misses < 30) {
            auto candidate = block("        ");
            const auto c = token_count(candidate);
            if (c + count + 3 <= target || c + count == target) {
                lines.insert(lines.end(), candidate.begin(), candidate.end());
                count += c;
            } else {
                ++misses;
            }
        }
        while (count < target) {
            const auto pad = std::min<std::size_t>(target - count, 8);
            lines.push_back("        " + padding(pad));
            count += pad;
        }
        lines.push_back("    }");
        for (auto& l : lines) {
            l += " " + std::string(kFamilyMarker) + std::to_string(family);
        }
        return lines;
    }

    std::string fence(std::size_t mod, std::size_t ret) {
        std::string f = "    " + std::string(kModifiers[mod]);
        if (mod < 3 && chance(0.3)) {
            f += chance(0.5) ? " static" : " final";
        } else if (mod >= 9 && chance(0.5)) {
            f += " public";
        }
        return f + " " + std::string(kReturns[ret]);
    }

private:
    std::mt19937_64& rng_;
};

struct Member {
    std::uint64_t uid = 0;
    std::uint32_t family = 0;  // 0: filler
    std::size_t mod = 0;
    std::size_t ret = 0;
    std::string fence;
    std::vector<std::string> body;  // header ... closing brace
};

struct FileModel {
    std::string path;
    std::vector<std::string> head;
    std::vector<Member> members;
};

class Generator {
public:
    Generator(const ScriptSpec& spec, std::uint64_t seed) : spec_(spec), rng_(seed), gen_(rng_) {
        for (const auto m : kModifiers) {
            mod_norm_.push_back(first_symbol(m));
        }
        for (const auto r : kReturns) {
            ret_norm_.push_back(last_symbol(r));
        }
    }

    HistoryScript run() {
        const auto n_authors = gen_.uniform(spec_.min_authors, spec_.max_authors);
        for (std::size_t i = 0; i < n_authors; ++i) {
            authors_.emplace_back(kAuthors[i % std::size(kAuthors)]);
            if (i >= std::size(kAuthors)) {
                authors_.back() += " " + std::to_string(i / std::size(kAuthors) + 1);
            }
        }
        if (spec_.utf8_author && authors_.size() > 1) {
            authors_[1] = std::string(kUtf8Author);
        }

        const auto n_files = gen_.uniform(spec_.min_files, spec_.max_files);
        for (std::size_t i = 0; i < n_files; ++i) {
            create_file(i);
        }
        if (snippet_count() == 0) {
            force_snippet();
        }

        std::vector<int> ops;
        ops.insert(ops.end(), gen_.uniform(spec_.min_copies, spec_.max_copies), 0);
        ops.insert(ops.end(), gen_.uniform(0, spec_.max_type2_edits), 1);
        ops.insert(ops.end(), gen_.uniform(0, spec_.max_filler_edits), 2);
        ops.insert(ops.end(), gen_.uniform(0, spec_.max_member_inserts), 3);
        std::shuffle(ops.begin(), ops.end(), rng_);
        for (const int op : ops) {
            switch (op) {
                case 0: copy_snippet(); break;
                case 1: type2_edit(); break;
                case 2: filler_edit(); break;
                default: insert_member(); break;
            }
        }
        return std::move(script_);
    }

private:
    const std::string& author() { return authors_[gen_.uniform(0, authors_.size() - 1)]; }

    std::uint32_t line_of(const FileModel& f, std::size_t k) const {
        auto line = static_cast<std::uint32_t>(f.head.size()) + 1;
        for (std::size_t j = 0; j < k; ++j) {
            line += 1 + static_cast<std::uint32_t>(f.members[j].body.size());
        }
        return line;
    }

    static std::vector<std::string> member_lines(const Member& m) {
        std::vector<std::string> lines{m.fence};
        lines.insert(lines.end(), m.body.begin(), m.body.end());
        return lines;
    }

    static std::string join(const std::vector<std::string>& lines) {
        std::string out;
        for (const auto& l : lines) {
            out += l;
            out += '\n';
        }
        return out;
    }

    Member make_member(std::uint32_t family, std::size_t target_tokens) {
        Member m;
        m.uid = ++next_uid_;
        m.family = family;
        m.mod = gen_.uniform(0, kModifierCount - 1);
        m.ret = gen_.uniform(0, kReturnCount - 1);
        m.fence = gen_.fence(m.mod, m.ret);
        m.body = family ? gen_.snippet_method(target_tokens, family) : gen_.filler_method();
        return m;
    }

    std::size_t snippet_target() { return gen_.uniform(spec_.min_snippet_tokens, spec_.max_snippet_tokens); }

    void create_file(std::size_t index) {
        FileModel f;
        const auto name = std::string(kFileNames[index % std::size(kFileNames)]) +
                          (index >= std::size(kFileNames) ? std::to_string(index / std::size(kFileNames)) : "");
        const auto pkg = "p" + std::to_string(index % 7);
        f.path = "src/main/java/org/sample/" + pkg + "/" + name + ".java";
        f.head = {"package org.sample." + pkg + ";", "import java.util.*;", "public class " + name + " {"};
        const auto n = gen_.uniform(spec_.min_members, spec_.max_members);
        for (std::size_t k = 0; k < n; ++k) {
            const bool snippet = k + 1 < n && gen_.chance(spec_.snippet_share);
            f.members.push_back(make_member(snippet ? ++next_family_ : 0, snippet_target()));
        }
        std::vector<std::string> lines = f.head;
        for (const auto& m : f.members) {
            const auto ml = member_lines(m);
            lines.insert(lines.end(), ml.begin(), ml.end());
        }
        lines.push_back("}");
        script_.events.push_back(CreateFile{f.path, author(), join(lines)});
        files_.push_back(std::move(f));
    }

    std::size_t snippet_count() const {
        std::size_t n = 0;
        for (const auto& f : files_) {
            for (const auto& m : f.members) {
                n += m.family ? 1 : 0;
            }
        }
        return n;
    }

    void force_snippet() {
        auto& f = files_.front();
        auto m = make_member(++next_family_, snippet_target());
        const auto line = line_of(f, 0);
        script_.events.push_back(EditLines{f.path, author(), line, line - 1, join(member_lines(m))});
        f.members.insert(f.members.begin(), std::move(m));
    }

    // Left/right neighbour symbols of every occurrence of `family`.
    bool family_isolated(std::uint32_t family) const {
        if (family == 0) {
            return true;
        }
        std::set<std::string> lefts;
        std::set<std::string> rights;
        std::size_t n = 0;
        for (const auto& f : files_) {
            for (std::size_t k = 0; k < f.members.size(); ++k) {
                if (f.members[k].family != family) {
                    continue;
                }
                ++n;
                lefts.insert(ret_norm_[f.members[k].ret]);
                rights.insert(k + 1 < f.members.size() ? mod_norm_[f.members[k + 1].mod] : "<class-end>");
            }
        }
        return lefts.size() == n && rights.size() == n;
    }

    std::vector<std::pair<std::size_t, std::size_t>> snippets() const {
        std::vector<std::pair<std::size_t, std::size_t>> out;
        for (std::size_t fi = 0; fi < files_.size(); ++fi) {
            for (std::size_t k = 0; k < files_[fi].members.size(); ++k) {
                if (files_[fi].members[k].family) {
                    out.emplace_back(fi, k);
                }
            }
        }
        return out;
    }

    void copy_snippet() {
        const auto sources = snippets();
        if (sources.empty()) {
            return;
        }
        const auto& who = author();
        const std::string suffix = gen_.chance(0.4) ? gen_.pick(kWords).substr(0, 3) + std::to_string(gen_.uniform(1, 9))
                                                   : std::string();
        for (int attempt = 0; attempt < 200; ++attempt) {
            const auto [sf, sk] = sources[gen_.uniform(0, sources.size() - 1)];
            const auto df = gen_.uniform(0, files_.size() - 1);
            auto& dst = files_[df];
            const auto k = gen_.uniform(0, dst.members.size() - 1);

            const auto& src_member = files_[sf].members[sk];
            const auto src_path = files_[sf].path;
            auto src_begin = line_of(files_[sf], sk) + 1;
            const auto src_end = src_begin + static_cast<std::uint32_t>(src_member.body.size()) - 1;

            Member m;
            m.uid = ++next_uid_;
            m.family = src_member.family;
            m.mod = gen_.uniform(0, kModifierCount - 1);
            m.ret = gen_.uniform(0, kReturnCount - 1);
            m.fence = gen_.fence(m.mod, m.ret);
            for (const auto& l : src_member.body) {
                m.body.push_back(rename_identifiers(l, suffix));
            }
            const auto family = m.family;
            const auto prev_family = k > 0 ? dst.members[k - 1].family : 0;
            const auto fence_line = line_of(dst, k);
            const auto fence_text = m.fence;
            dst.members.insert(dst.members.begin() + static_cast<std::ptrdiff_t>(k), std::move(m));
            if (!family_isolated(family) || !family_isolated(prev_family)) {
                dst.members.erase(dst.members.begin() + static_cast<std::ptrdiff_t>(k));
                continue;
            }
            // The fence commit shifts a source below the insertion point by one line.
            const std::uint32_t shift = (sf == df && sk >= k) ? 1 : 0;
            script_.events.push_back(EditLines{dst.path, who, fence_line, fence_line - 1, fence_text + "\n"});
            script_.events.push_back(
                CopySnippet{src_path, src_begin + shift, src_end + shift, dst.path, fence_line + 1, who, suffix});
            return;
        }
    }

    void type2_edit() {
        const auto targets = snippets();
        if (targets.empty()) {
            return;
        }
        for (int attempt = 0; attempt < 20; ++attempt) {
            const auto [fi, k] = targets[gen_.uniform(0, targets.size() - 1)];
            auto& member = files_[fi].members[k];
            const auto li = gen_.uniform(0, member.body.size() - 1);
            auto& line = member.body[li];
            std::vector<lexer::Token> editable;
            for (auto& t : lexer::tokenize_java(line).tokens) {
                if (t.kind == lexer::TokenKind::Identifier || t.kind == lexer::TokenKind::NumericLiteral ||
                    t.kind == lexer::TokenKind::StringLiteral) {
                    editable.push_back(std::move(t));
                }
            }
            if (editable.empty()) {
                continue;
            }
            const auto& t = editable[gen_.uniform(0, editable.size() - 1)];
            std::string replacement;
            do {
                replacement = t.kind == lexer::TokenKind::Identifier     ? gen_.ident()
                              : t.kind == lexer::TokenKind::NumericLiteral ? std::to_string(gen_.uniform(0, 9999))
                                                                           : gen_.string_literal();
            } while (replacement == t.text);
            line.replace(t.column - 1, t.text.size(), replacement);
            const auto at = line_of(files_[fi], k) + 1 + static_cast<std::uint32_t>(li);
            script_.events.push_back(EditLines{files_[fi].path, author(), at, at, line + "\n"});
            return;
        }
    }

    void filler_edit() {
        std::vector<std::pair<std::size_t, std::size_t>> fillers;
        for (std::size_t fi = 0; fi < files_.size(); ++fi) {
            for (std::size_t k = 0; k < files_[fi].members.size(); ++k) {
                if (!files_[fi].members[k].family) {
                    fillers.emplace_back(fi, k);
                }
            }
        }
        const auto [fi, k] = fillers[gen_.uniform(0, fillers.size() - 1)];
        auto& body = files_[fi].members[k].body;
        const auto base = line_of(files_[fi], k) + 1;  // header line
        const auto statements = body.size() - 2;
        const auto& who = author();
        const auto choice = gen_.uniform(0, 2);
        if (choice == 0 && statements > 0) {
            const auto li = gen_.uniform(1, statements);
            std::string fresh;
            do {
                fresh = "        " + gen_.statement();
            } while (fresh == body[li]);
            body[li] = fresh;
            const auto at = base + static_cast<std::uint32_t>(li);
            script_.events.push_back(EditLines{files_[fi].path, who, at, at, fresh + "\n"});
        } else if (choice == 1 && statements > 1) {
            const auto li = gen_.uniform(1, statements);
            body.erase(body.begin() + static_cast<std::ptrdiff_t>(li));
            const auto at = base + static_cast<std::uint32_t>(li);
            script_.events.push_back(EditLines{files_[fi].path, who, at, at, ""});
        } else {
            const auto li = gen_.uniform(1, body.size() - 1);
            const auto n = gen_.uniform(1, 3);
            std::vector<std::string> fresh;
            for (std::size_t i = 0; i < n; ++i) {
                fresh.push_back("        " + gen_.statement());
            }
            body.insert(body.begin() + static_cast<std::ptrdiff_t>(li), fresh.begin(), fresh.end());
            const auto at = base + static_cast<std::uint32_t>(li);
            script_.events.push_back(EditLines{files_[fi].path, who, at, at - 1, join(fresh)});
        }
    }

    void insert_member() {
        for (int attempt = 0; attempt < 50; ++attempt) {
            const auto fi = gen_.uniform(0, files_.size() - 1);
            auto& f = files_[fi];
            const auto k = gen_.uniform(0, f.members.size() - 1);
            const auto prev_family = k > 0 ? f.members[k - 1].family : 0;
            auto m = make_member(0, 0);
            const auto line = line_of(f, k);
            const auto content = join(member_lines(m));
            f.members.insert(f.members.begin() + static_cast<std::ptrdiff_t>(k), std::move(m));
            if (!family_isolated(prev_family)) {
                f.members.erase(f.members.begin() + static_cast<std::ptrdiff_t>(k));
                continue;
            }
            script_.events.push_back(EditLines{f.path, author(), line, line - 1, content});
            return;
        }
    }

    const ScriptSpec& spec_;
    std::mt19937_64 rng_;
    CodeGen gen_;
    std::vector<std::string> mod_norm_;
    std::vector<std::string> ret_norm_;
    std::vector<std::string> authors_;
    std::vector<FileModel> files_;
    HistoryScript script_;
    std::uint32_t next_family_ = 0;
    std::uint64_t next_uid_ = 0;
};

}  // namespace

HistoryScript random_script(const ScriptSpec& spec, std::uint64_t seed) {
    if (spec.min_authors == 0 || spec.min_authors > spec.max_authors || spec.min_files == 0 ||
        spec.min_files > spec.max_files || spec.min_members == 0 || spec.min_members > spec.max_members ||
        spec.min_copies > spec.max_copies || spec.min_snippet_tokens < 8 ||
        spec.min_snippet_tokens > spec.max_snippet_tokens) {
        throw std::invalid_argument("random_script: inconsistent spec");
    }
    return Generator(spec, seed).run();
}

}  // namespace cloneblame::harness
