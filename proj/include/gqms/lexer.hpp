#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "gqms/source_span.hpp"

namespace gqms {

enum class TokenKind {
  Identifier,
  Number,
  String,
  LBrace,
  RBrace,
  LBracket,
  RBracket,
  LParen,
  RParen,
  Comma,
  Colon,
  Plus,
  Minus,
  Star,
  Slash,
  Less,
  LessEqual,
  Greater,
  GreaterEqual,
  Equal,
  NotEqual,
  End,
};

struct Token {
  TokenKind kind = TokenKind::End;
  /// Raw source text; for strings, the decoded contents without quotes.
  std::string text;
  SourceSpan span;
  /// Number tokens: true when written without '.' or exponent.
  bool integral = false;

  [[nodiscard]] bool is(TokenKind k) const noexcept { return kind == k; }
  [[nodiscard]] bool is_word(std::string_view w) const noexcept {
    return kind == TokenKind::Identifier && text == w;
  }
};

struct LexError {
  SourceSpan span;
  std::string message;
};

struct LexOutput {
  std::vector<Token> tokens;  // always terminated by an End token
  std::vector<LexError> errors;
};

/// Splits `.gqms` text into tokens. `# ...` comments and whitespace are
/// dropped. Malformed characters are reported and skipped so the caller
/// sees every lexical problem in one pass.
LexOutput tokenize(std::string_view text, std::string_view file_name);

/// Human-readable description of a token for "found ..." messages.
std::string describe(const Token& tok);
std::string_view token_kind_spelling(TokenKind kind) noexcept;

bool is_identifier(std::string_view text) noexcept;
/// Words that cannot be used as declared identifiers.
bool is_reserved_word(std::string_view word) noexcept;

}  // namespace gqms
