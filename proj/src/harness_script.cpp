#include <charconv>
#include <sstream>

#include "cloneblame/errors.hpp"
#include "cloneblame/harness.hpp"
#include "cloneblame/lexer.hpp"

namespace cloneblame::harness {

namespace {

std::string escape(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (const char c : s) {
        switch (c) {
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            case '\t': out += "\\t"; break;
            default: out += c;
        }
    }
    return out;
}

std::string unescape(std::string_view s, std::size_t line_no) {
    std::string out;
    out.reserve(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] != '\\') {
            out += s[i];
            continue;
        }
        if (++i == s.size()) {
            throw ParseError("script line " + std::to_string(line_no) + ": dangling escape");
        }
        switch (s[i]) {
            case '\\': out += '\\'; break;
            case 'n': out += '\n'; break;
            case 'r': out += '\r'; break;
            case 't': out += '\t'; break;
            default:
                throw ParseError("script line " + std::to_string(line_no) + ": unknown escape \\" + s[i]);
        }
    }
    return out;
}

std::vector<std::string_view> split_tabs(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const auto tab = line.find('\t', start);
        fields.push_back(line.substr(start, tab == std::string_view::npos ? std::string_view::npos : tab - start));
        if (tab == std::string_view::npos) {
            return fields;
        }
        start = tab + 1;
    }
}

std::uint32_t parse_number(std::string_view s, std::size_t line_no) {
    std::uint32_t value = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
        throw ParseError("script line " + std::to_string(line_no) + ": bad number '" + std::string(s) + "'");
    }
    return value;
}

}  // namespace

std::string serialize_script(const HistoryScript& script) {
    std::ostringstream out;
    for (const auto& event : script.events) {
        if (const auto* c = std::get_if<CreateFile>(&event)) {
            out << "create\t" << escape(c->path) << '\t' << escape(c->author) << '\t' << escape(c->content);
        } else if (const auto* e = std::get_if<EditLines>(&event)) {
            out << "edit\t" << escape(e->path) << '\t' << escape(e->author) << '\t' << e->begin << '\t' << e->end
                << '\t' << escape(e->content);
        } else {
            const auto& p = std::get<CopySnippet>(event);
            out << "copy\t" << escape(p.src) << '\t' << p.begin << '\t' << p.end << '\t' << escape(p.dst) << '\t'
                << p.insert_line << '\t' << escape(p.author);
            if (!p.rename_suffix.empty()) {
                out << '\t' << escape(p.rename_suffix);
            }
        }
        out << '\n';
    }
    return out.str();
}

HistoryScript parse_script(std::string_view text) {
    HistoryScript script;
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start < text.size()) {
        auto stop = text.find('\n', start);
        if (stop == std::string_view::npos) {
            stop = text.size();
        }
        auto line = text.substr(start, stop - start);
        start = stop + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.remove_suffix(1);
        }
        if (line.empty() || line.front() == '#') {
            continue;
        }
        const auto f = split_tabs(line);
        const auto expect = [&](std::size_t lo, std::size_t hi) {
            if (f.size() < lo || f.size() > hi) {
                throw ParseError("script line " + std::to_string(line_no) + ": '" + std::string(f[0]) +
                                 "' takes " + std::to_string(lo - 1) + " fields, got " + std::to_string(f.size() - 1));
            }
        };
        if (f[0] == "create") {
            expect(4, 4);
            script.events.push_back(
                CreateFile{unescape(f[1], line_no), unescape(f[2], line_no), unescape(f[3], line_no)});
        } else if (f[0] == "edit") {
            expect(6, 6);
            script.events.push_back(EditLines{unescape(f[1], line_no), unescape(f[2], line_no),
                                              parse_number(f[3], line_no), parse_number(f[4], line_no),
                                              unescape(f[5], line_no)});
        } else if (f[0] == "copy") {
            expect(7, 8);
            CopySnippet c;
            c.src = unescape(f[1], line_no);
            c.begin = parse_number(f[2], line_no);
            c.end = parse_number(f[3], line_no);
            c.dst = unescape(f[4], line_no);
            c.insert_line = parse_number(f[5], line_no);
            c.author = unescape(f[6], line_no);
            if (f.size() == 8) {
                c.rename_suffix = unescape(f[7], line_no);
            }
            script.events.push_back(std::move(c));
        } else {
            throw ParseError("script line " + std::to_string(line_no) + ": unknown event '" + std::string(f[0]) + "'");
        }
    }
    return script;
}

std::string rename_identifiers(std::string_view line, std::string_view suffix) {
    std::string out(line);
    if (suffix.empty()) {
        return out;
    }
    const auto tokens = lexer::tokenize_java(line).tokens;
    for (auto it = tokens.rbegin(); it != tokens.rend(); ++it) {
        if (it->kind == lexer::TokenKind::Identifier && it->line == 1) {
            out.insert(it->column - 1 + it->text.size(), suffix);
        }
    }
    return out;
}

}  // namespace cloneblame::harness
