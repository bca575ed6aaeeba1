#include "cloneblame/lexer.hpp"

#include <algorithm>
#include <unordered_set>

namespace cloneblame::lexer {

namespace {

// Java 17 reserved keywords. Contextual keywords (var, record, yield, sealed,
// permits, module words) stay identifiers.
const std::unordered_set<std::string_view>& keyword_set() {
    static const std::unordered_set<std::string_view> kKeywords = {
        "abstract", "assert",     "boolean",   "break",     "byte",         "case",
        "catch",    "char",       "class",     "const",     "continue",     "default",
        "do",       "double",     "else",      "enum",      "extends",      "final",
        "finally",  "float",      "for",       "goto",      "if",           "implements",
        "import",   "instanceof", "int",       "interface", "long",         "native",
        "new",      "package",    "private",   "protected", "public",       "return",
        "short",    "static",     "strictfp",  "super",     "switch",       "synchronized",
        "this",     "throw",      "throws",    "transient", "try",          "void",
        "volatile", "while",      "_",
    };
    return kKeywords;
}

// Longest first so a linear scan yields the maximal munch.
constexpr std::string_view kOperators[] = {
    ">>>=", "<<=", ">>=", ">>>", "->", "++", "--", "&&", "||", "==", "!=",
    "<=",   ">=",  "+=",  "-=",  "*=",  "/=", "&=", "|=", "^=", "%=", "<<", ">>", "=",
    ">",    "<",   "!",   "~",   "?",   ":",  "+",  "-",  "*",  "/",  "&",  "|",
};
constexpr std::string_view kSingleOperators = "^%@";
constexpr std::string_view kSeparators = "(){}[];,.";

bool is_ident_start(unsigned char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_' || c == '$' || c >= 0x80;
}

bool is_ident_part(unsigned char c) { return is_ident_start(c) || (c >= '0' && c <= '9'); }

bool is_digit(unsigned char c) { return c >= '0' && c <= '9'; }

bool is_hex_digit(unsigned char c) {
    return is_digit(c) || (c >= 'a' && c <= 'f') || (c >= 'A' && c <= 'F');
}

class JavaLexer {
public:
    JavaLexer(std::string_view src, FileId file_id) : src_(src), file_id_(file_id) {}

    TokenizeResult run() {
        TokenizeResult result;
        result.line_count = count_lines(src_);
        if (src_.starts_with("\xEF\xBB\xBF")) {
            pos_ = 3;
            col_ = 4;
        }
        while (pos_ < src_.size()) {
            step(result);
        }
        return result;
    }

private:
    unsigned char peek(std::size_t ahead = 0) const {
        return pos_ + ahead < src_.size() ? static_cast<unsigned char>(src_[pos_ + ahead]) : 0;
    }

    void advance(std::size_t n = 1) {
        for (std::size_t i = 0; i < n && pos_ < src_.size(); ++i) {
            if (src_[pos_] == '\n') {
                ++line_;
                col_ = 1;
            } else {
                ++col_;
            }
            ++pos_;
        }
    }

    // Moves to the first byte after the next newline (or to EOF).
    void skip_to_next_line() {
        while (pos_ < src_.size() && src_[pos_] != '\n') {
            advance();
        }
        advance();
    }

    void emit(TokenizeResult& out, TokenKind kind, std::size_t begin, std::uint32_t line, std::uint32_t col) {
        out.tokens.push_back(Token{file_id_, line, col, kind, std::string(src_.substr(begin, pos_ - begin))});
    }

    void step(TokenizeResult& out) {
        const unsigned char c = peek();
        const std::size_t begin = pos_;
        const std::uint32_t line = line_;
        const std::uint32_t col = col_;

        if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f') {
            advance();
            return;
        }
        if (c == '/' && peek(1) == '/') {
            while (pos_ < src_.size() && src_[pos_] != '\n') {
                advance();
            }
            return;
        }
        if (c == '/' && peek(1) == '*') {
            const auto close = src_.find("*/", pos_ + 2);
            if (close == std::string_view::npos) {
                out.warnings.push_back({line, "unterminated block comment"});
                advance(src_.size() - pos_);
                return;
            }
            advance(close + 2 - pos_);
            return;
        }
        if (c == '"') {
            lex_string(out, begin, line, col);
            return;
        }
        if (c == '\'') {
            lex_quoted(out, '\'', TokenKind::CharLiteral, "character literal", begin, line, col);
            return;
        }
        if (is_digit(c) || (c == '.' && is_digit(peek(1)))) {
            lex_number();
            emit(out, TokenKind::NumericLiteral, begin, line, col);
            return;
        }
        if (is_ident_start(c)) {
            while (pos_ < src_.size() && is_ident_part(peek())) {
                advance();
            }
            const auto word = src_.substr(begin, pos_ - begin);
            TokenKind kind = TokenKind::Identifier;
            if (word == "true" || word == "false") {
                kind = TokenKind::BooleanLiteral;
            } else if (word == "null") {
                kind = TokenKind::NullLiteral;
            } else if (is_java_keyword(word)) {
                kind = TokenKind::Keyword;
            }
            emit(out, kind, begin, line, col);
            return;
        }
        const auto rest = src_.substr(pos_);
        if (rest.starts_with("...") || rest.starts_with("::")) {
            advance(rest[0] == '.' ? 3 : 2);
            emit(out, TokenKind::Separator, begin, line, col);
            return;
        }
        if (kSeparators.find(static_cast<char>(c)) != std::string_view::npos) {
            advance();
            emit(out, TokenKind::Separator, begin, line, col);
            return;
        }
        for (const auto op : kOperators) {
            if (rest.starts_with(op)) {
                advance(op.size());
                emit(out, TokenKind::Operator, begin, line, col);
                return;
            }
        }
        if (kSingleOperators.find(static_cast<char>(c)) != std::string_view::npos) {
            advance();
            emit(out, TokenKind::Operator, begin, line, col);
            return;
        }
        out.warnings.push_back({line, "unexpected character skipped"});
        advance();
    }

    void lex_string(TokenizeResult& out, std::size_t begin, std::uint32_t line, std::uint32_t col) {
        if (src_.substr(pos_).starts_with("\"\"\"")) {
            // Text block: may span lines; ends at the next unescaped """.
            std::size_t i = pos_ + 3;
            while (i < src_.size()) {
                if (src_[i] == '\\') {
                    i += 2;
                    continue;
                }
                if (src_.substr(i).starts_with("\"\"\"")) {
                    advance(i + 3 - pos_);
                    emit(out, TokenKind::StringLiteral, begin, line, col);
                    return;
                }
                ++i;
            }
            out.warnings.push_back({line, "unterminated text block"});
            skip_to_next_line();
            return;
        }
        lex_quoted(out, '"', TokenKind::StringLiteral, "string literal", begin, line, col);
    }

    void lex_quoted(TokenizeResult& out, char quote, TokenKind kind, const char* what, std::size_t begin,
                    std::uint32_t line, std::uint32_t col) {
        std::size_t i = pos_ + 1;
        while (i < src_.size() && src_[i] != '\n') {
            if (src_[i] == '\\') {
                i += 2;
                continue;
            }
            if (src_[i] == quote) {
                advance(i + 1 - pos_);
                emit(out, kind, begin, line, col);
                return;
            }
            ++i;
        }
        out.warnings.push_back({line, std::string("unterminated ") + what});
        skip_to_next_line();
    }

    void lex_number() {
        auto eat_while = [this](auto pred) {
            while (pos_ < src_.size() && pred(peek())) {
                advance();
            }
        };
        auto digits = [](unsigned char ch) { return is_digit(ch) || ch == '_'; };
        auto hex = [](unsigned char ch) { return is_hex_digit(ch) || ch == '_'; };

        if (peek() == '0' && (peek(1) == 'x' || peek(1) == 'X')) {
            advance(2);
            eat_while(hex);
            if (peek() == '.') {
                advance();
                eat_while(hex);
            }
            if (peek() == 'p' || peek() == 'P') {
                advance();
                if (peek() == '+' || peek() == '-') {
                    advance();
                }
                eat_while(digits);
            }
        } else if (peek() == '0' && (peek(1) == 'b' || peek(1) == 'B')) {
            advance(2);
            eat_while([](unsigned char ch) { return ch == '0' || ch == '1' || ch == '_'; });
        } else {
            eat_while(digits);
            if (peek() == '.' && peek(1) != '.' && (!is_ident_start(peek(1)) || std::string_view("eEfFdD").find(static_cast<char>(peek(1))) != std::string_view::npos)) {
                advance();
                eat_while(digits);
            }
            if ((peek() == 'e' || peek() == 'E') &&
                (is_digit(peek(1)) || ((peek(1) == '+' || peek(1) == '-') && is_digit(peek(2))))) {
                advance(2);
                eat_while(digits);
            }
        }
        if (std::string_view("lLfFdD").find(static_cast<char>(peek())) != std::string_view::npos) {
            advance();
        }
    }

    std::string_view src_;
    FileId file_id_;
    std::size_t pos_ = 0;
    std::uint32_t line_ = 1;
    std::uint32_t col_ = 1;
};

}  // namespace

const char* to_string(TokenKind kind) {
    switch (kind) {
        case TokenKind::Keyword: return "keyword";
        case TokenKind::Identifier: return "identifier";
        case TokenKind::NumericLiteral: return "numeric-literal";
        case TokenKind::StringLiteral: return "string-literal";
        case TokenKind::CharLiteral: return "char-literal";
        case TokenKind::BooleanLiteral: return "boolean-literal";
        case TokenKind::NullLiteral: return "null-literal";
        case TokenKind::Operator: return "operator";
        case TokenKind::Separator: return "separator";
    }
    return "unknown";
}

std::uint32_t count_lines(std::string_view content) {
    if (content.empty()) {
        return 0;
    }
    auto n = static_cast<std::uint32_t>(std::count(content.begin(), content.end(), '\n'));
    if (content.back() != '\n') {
        ++n;
    }
    return n;
}

bool is_java_keyword(std::string_view word) { return keyword_set().contains(word); }

TokenizeResult tokenize_java(std::string_view content, FileId file_id) {
    return JavaLexer(content, file_id).run();
}

TokenizeResult tokenize_file(std::string_view /*path*/, std::string_view content, FileId file_id) {
    return tokenize_java(content, file_id);
}

std::string normalized_symbol(const Token& token) {
    switch (token.kind) {
        case TokenKind::Identifier: return std::string(kIdentifierPlaceholder);
        case TokenKind::NumericLiteral: return std::string(kNumberPlaceholder);
        case TokenKind::StringLiteral: return std::string(kStringPlaceholder);
        case TokenKind::CharLiteral: return std::string(kCharPlaceholder);
        default: return token.text;
    }
}

std::vector<NormalizedToken> normalize(std::span<const Token> tokens) {
    std::vector<NormalizedToken> out;
    out.reserve(tokens.size());
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        out.push_back({normalized_symbol(tokens[i]), static_cast<std::uint32_t>(i)});
    }
    return out;
}

}  // namespace cloneblame::lexer
