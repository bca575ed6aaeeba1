#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace cloneblame::lexer {

using FileId = std::uint32_t;

enum class TokenKind : std::uint8_t {
    Keyword,
    Identifier,
    NumericLiteral,
    StringLiteral,
    CharLiteral,
    BooleanLiteral,
    NullLiteral,
    Operator,
    Separator,
};

const char* to_string(TokenKind kind);

struct Token {
    FileId file_id = 0;
    std::uint32_t line = 1;    // 1-based physical line
    std::uint32_t column = 1;  // 1-based byte column
    TokenKind kind = TokenKind::Separator;
    std::string text;

    friend bool operator==(const Token&, const Token&) = default;
};

/// Token after type-2 normalization. `origin` indexes the source token stream.
struct NormalizedToken {
    std::string symbol;
    std::uint32_t origin = 0;

    friend bool operator==(const NormalizedToken&, const NormalizedToken&) = default;
};

struct Diagnostic {
    std::uint32_t line = 0;
    std::string message;
};

struct TokenizeResult {
    std::vector<Token> tokens;
    std::vector<Diagnostic> warnings;
    std::uint32_t line_count = 0;  // physical lines, git's counting rule
};

inline constexpr std::string_view kIdentifierPlaceholder = "$id";
inline constexpr std::string_view kNumberPlaceholder = "$num";
inline constexpr std::string_view kStringPlaceholder = "$str";
inline constexpr std::string_view kCharPlaceholder = "$char";

/// Number of physical lines as git counts them: newline-terminated lines plus a
/// trailing unterminated one.
std::uint32_t count_lines(std::string_view content);

bool is_java_keyword(std::string_view word);

/// Lexes Java source. Comments and whitespace produce no tokens. Malformed
/// literals or comments produce a warning and lexing resumes on the next line.
///
/// Only Java is implemented. Another language needs its own function with the
/// same result type; everything downstream works on NormalizedToken streams.
TokenizeResult tokenize_java(std::string_view content, FileId file_id = 0);

/// Path-aware entry point used by the pipeline. `path` is only used in warnings
/// and to pick the language (currently always Java).
TokenizeResult tokenize_file(std::string_view path, std::string_view content, FileId file_id = 0);

/// Identifiers become `$id`, numeric/string/char literals their placeholders,
/// everything else keeps its text.
std::vector<NormalizedToken> normalize(std::span<const Token> tokens);

std::string normalized_symbol(const Token& token);

}  // namespace cloneblame::lexer
