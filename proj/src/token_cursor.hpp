#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "gqms/expr.hpp"
#include "gqms/lexer.hpp"

namespace gqms::detail {

/// Thrown to abandon the current construct; the caller records the error
/// and resynchronizes.
struct ParseFailure {
  ParseError error;
};

class TokenCursor {
 public:
  explicit TokenCursor(const std::vector<Token>& tokens) : tokens_(tokens) {}

  [[nodiscard]] const Token& peek(std::size_t ahead = 0) const
  {
    const std::size_t i = pos_ + ahead;
    return i < tokens_.size() ? tokens_[i] : tokens_.back();
  }
  [[nodiscard]] bool at(TokenKind k) const { return peek().is(k); }
  [[nodiscard]] bool at_word(std::string_view w) const { return peek().is_word(w); }
  [[nodiscard]] bool at_end() const { return at(TokenKind::End); }
  [[nodiscard]] std::size_t position() const { return pos_; }

  const Token& next()
  {
    const Token& t = peek();
    if (pos_ + 1 < tokens_.size()) ++pos_;
    return t;
  }

  bool accept(TokenKind k)
  {
    if (!at(k)) return false;
    next();
    return true;
  }

  bool accept_word(std::string_view w)
  {
    if (!at_word(w)) return false;
    next();
    return true;
  }

  [[noreturn]] void fail(std::string expected) const
  {
    throw ParseFailure{ParseError{peek().span, std::move(expected), describe(peek())}};
  }

  const Token& expect(TokenKind k)
  {
    if (!at(k)) fail(std::string(token_kind_spelling(k)));
    return next();
  }

  const Token& expect_word(std::string_view w)
  {
    if (!at_word(w)) fail(std::string("'") + std::string(w) + "'");
    return next();
  }

  /// An identifier that is not a reserved word.
  const Token& expect_identifier(std::string_view what)
  {
    if (!at(TokenKind::Identifier) || is_reserved_word(peek().text)) fail(std::string(what));
    return next();
  }

  [[nodiscard]] SourceSpan span_since(const Token& first) const
  {
    // pos_ points past the last consumed token.
    const Token& last = pos_ > 0 ? tokens_[pos_ - 1] : tokens_.front();
    return join(first.span, last.span);
  }

 private:
  const std::vector<Token>& tokens_;
  std::size_t pos_ = 0;
};

/// Parses an `or`-level expression starting at the cursor.
Expr parse_expression(TokenCursor& cursor);

}  // namespace gqms::detail
