#include "gqms/lexer.hpp"

#include <algorithm>
#include <array>
#include <cctype>

#include <fmt/format.h>

namespace gqms {
namespace {

constexpr std::array k_reserved = {
  // declarations
  "goal", "strategy", "context", "assumption", "gqm", "metric", "relation",
  "question", "interpretation", "diagnostic", "mgoal", "for", "via", "when",
  // expressions
  "and", "or", "not", "true", "false", "satisfied", "not_satisfied", "undetermined",
  "status", "defined", "pct_change", "abs", "min", "max", "t",
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool digit(char c) { return c >= '0' && c <= '9'; }

class Lexer {
 public:
  Lexer(std::string_view text, std::string_view file) : text_(text), file_(file) {}

  LexOutput run()
  {
    LexOutput out;
    for (;;) {
      skip_trivia();
      if (pos_ >= text_.size()) break;
      lex_one(out);
    }
    Token end;
    end.kind = TokenKind::End;
    end.span = span_from(line_, col_);
    out.tokens.push_back(std::move(end));
    return out;
  }

 private:
  [[nodiscard]] char peek(std::size_t ahead = 0) const
  {
    return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0';
  }

  void advance()
  {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  [[nodiscard]] SourceSpan span_from(int line, int col) const
  {
    return SourceSpan{std::string(file_), line, col, line_, col_};
  }

  void skip_trivia()
  {
    while (pos_ < text_.size()) {
      const char c = peek();
      if (c == '#') {
        while (pos_ < text_.size() && peek() != '\n') advance();
      } else if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        advance();
      } else {
        break;
      }
    }
  }

  void lex_one(LexOutput& out)
  {
    const int line = line_;
    const int col = col_;
    const std::size_t start = pos_;
    const char c = peek();

    Token tok;
    if (ident_start(c)) {
      while (pos_ < text_.size() && ident_char(peek())) advance();
      tok.kind = TokenKind::Identifier;
      tok.text = std::string(text_.substr(start, pos_ - start));
    } else if (digit(c)) {
      lex_number(tok, out, line, col);
      if (tok.text.empty()) return;
    } else if (c == '"') {
      if (!lex_string(tok, out, line, col)) return;
    } else {
      tok.kind = punct(out, line, col);
      if (tok.kind == TokenKind::End) return;
      tok.text = std::string(text_.substr(start, pos_ - start));
    }
    tok.span = span_from(line, col);
    out.tokens.push_back(std::move(tok));
  }

  void lex_number(Token& tok, LexOutput& out, int line, int col)
  {
    const std::size_t start = pos_;
    bool integral = true;
    while (digit(peek())) advance();
    if (peek() == '.' && digit(peek(1))) {
      integral = false;
      advance();
      while (digit(peek())) advance();
    }
    if (peek() == 'e' || peek() == 'E') {
      std::size_t ahead = 1;
      if (peek(1) == '+' || peek(1) == '-') ahead = 2;
      if (digit(peek(ahead))) {
        integral = false;
        for (std::size_t i = 0; i < ahead; ++i) advance();
        while (digit(peek())) advance();
      }
    }
    if (ident_char(peek())) {
      while (pos_ < text_.size() && ident_char(peek())) advance();
      out.errors.push_back({span_from(line, col),
                            fmt::format("malformed number '{}'", text_.substr(start, pos_ - start))});
      return;
    }
    tok.kind = TokenKind::Number;
    tok.integral = integral;
    tok.text = std::string(text_.substr(start, pos_ - start));
  }

  bool lex_string(Token& tok, LexOutput& out, int line, int col)
  {
    advance();  // opening quote
    std::string value;
    for (;;) {
      if (pos_ >= text_.size() || peek() == '\n') {
        out.errors.push_back({span_from(line, col), "unterminated string"});
        return false;
      }
      const char c = peek();
      if (c == '"') {
        advance();
        break;
      }
      if (c == '\\') {
        const char next = peek(1);
        if (next == '"' || next == '\\') {
          value.push_back(next);
          advance();
          advance();
          continue;
        }
        const int el = line_;
        const int ec = col_;
        advance();
        out.errors.push_back({span_from(el, ec), "invalid escape sequence (only \\\" and \\\\ are allowed)"});
        continue;
      }
      value.push_back(c);
      advance();
    }
    tok.kind = TokenKind::String;
    tok.text = std::move(value);
    return true;
  }

  TokenKind punct(LexOutput& out, int line, int col)
  {
    const char c = peek();
    const char n = peek(1);
    auto one = [&](TokenKind k) {
      advance();
      return k;
    };
    auto two = [&](TokenKind k) {
      advance();
      advance();
      return k;
    };
    switch (c) {
      case '{': return one(TokenKind::LBrace);
      case '}': return one(TokenKind::RBrace);
      case '[': return one(TokenKind::LBracket);
      case ']': return one(TokenKind::RBracket);
      case '(': return one(TokenKind::LParen);
      case ')': return one(TokenKind::RParen);
      case ',': return one(TokenKind::Comma);
      case ':': return one(TokenKind::Colon);
      case '+': return one(TokenKind::Plus);
      case '-': return one(TokenKind::Minus);
      case '*': return one(TokenKind::Star);
      case '/': return one(TokenKind::Slash);
      case '=': return one(TokenKind::Equal);
      case '<': return n == '=' ? two(TokenKind::LessEqual) : one(TokenKind::Less);
      case '>': return n == '=' ? two(TokenKind::GreaterEqual) : one(TokenKind::Greater);
      case '!':
        if (n == '=') return two(TokenKind::NotEqual);
        break;
      default: break;
    }
    advance();
    const unsigned char uc = static_cast<unsigned char>(c);
    const std::string shown = std::isprint(uc) ? fmt::format("'{}'", c) : fmt::format("byte 0x{:02x}", uc);
    out.errors.push_back({span_from(line, col), fmt::format("unexpected character {}", shown)});
    return TokenKind::End;
  }

  std::string_view text_;
  std::string_view file_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

}  // namespace

LexOutput tokenize(std::string_view text, std::string_view file_name)
{
  return Lexer(text, file_name).run();
}

std::string_view token_kind_spelling(TokenKind kind) noexcept
{
  switch (kind) {
    case TokenKind::Identifier: return "identifier";
    case TokenKind::Number: return "number";
    case TokenKind::String: return "string";
    case TokenKind::LBrace: return "'{'";
    case TokenKind::RBrace: return "'}'";
    case TokenKind::LBracket: return "'['";
    case TokenKind::RBracket: return "']'";
    case TokenKind::LParen: return "'('";
    case TokenKind::RParen: return "')'";
    case TokenKind::Comma: return "','";
    case TokenKind::Colon: return "':'";
    case TokenKind::Plus: return "'+'";
    case TokenKind::Minus: return "'-'";
    case TokenKind::Star: return "'*'";
    case TokenKind::Slash: return "'/'";
    case TokenKind::Less: return "'<'";
    case TokenKind::LessEqual: return "'<='";
    case TokenKind::Greater: return "'>'";
    case TokenKind::GreaterEqual: return "'>='";
    case TokenKind::Equal: return "'='";
    case TokenKind::NotEqual: return "'!='";
    case TokenKind::End: return "end of input";
  }
  return "token";
}

std::string describe(const Token& tok)
{
  switch (tok.kind) {
    case TokenKind::Identifier: return fmt::format("'{}'", tok.text);
    case TokenKind::Number: return fmt::format("number {}", tok.text);
    case TokenKind::String: return fmt::format("string \"{}\"", tok.text);
    default: return std::string(token_kind_spelling(tok.kind));
  }
}

bool is_identifier(std::string_view text) noexcept
{
  if (text.empty() || !ident_start(text.front())) return false;
  return std::all_of(text.begin(), text.end(), ident_char);
}

bool is_reserved_word(std::string_view word) noexcept
{
  return std::find(k_reserved.begin(), k_reserved.end(), word) != k_reserved.end();
}

}  // namespace gqms
