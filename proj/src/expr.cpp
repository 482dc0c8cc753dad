#include "gqms/expr.hpp"

#include <charconv>
#include <cmath>
#include <system_error>

#include <fmt/format.h>

#include "token_cursor.hpp"

namespace gqms {

Expr Expr::number_literal(double v)
{
  Expr e;
  e.kind = ExprKind::Number;
  e.number = v;
  return e;
}

Expr Expr::boolean_literal(bool v)
{
  Expr e;
  e.kind = ExprKind::Boolean;
  e.boolean = v;
  return e;
}

Expr Expr::status_literal(gqms::GoalStatus s)
{
  Expr e;
  e.kind = ExprKind::Status;
  e.status = s;
  return e;
}

Expr Expr::metric(std::string id, std::int64_t lag)
{
  Expr e;
  e.kind = ExprKind::Metric;
  e.name = std::move(id);
  e.lag = lag;
  return e;
}

Expr Expr::goal_status(std::string goal)
{
  Expr e;
  e.kind = ExprKind::GoalStatus;
  e.name = std::move(goal);
  return e;
}

Expr Expr::unary_op(UnaryOp op, Expr operand)
{
  Expr e;
  e.kind = ExprKind::Unary;
  e.unary = op;
  e.args.push_back(std::move(operand));
  return e;
}

Expr Expr::binary_op(BinaryOp op, Expr lhs, Expr rhs)
{
  Expr e;
  e.kind = ExprKind::Binary;
  e.binary = op;
  e.args.push_back(std::move(lhs));
  e.args.push_back(std::move(rhs));
  return e;
}

Expr Expr::call(Function fn, std::vector<Expr> args)
{
  Expr e;
  e.kind = ExprKind::Call;
  e.function = fn;
  e.args = std::move(args);
  return e;
}

std::string_view binary_op_spelling(BinaryOp op) noexcept
{
  switch (op) {
    case BinaryOp::Add: return "+";
    case BinaryOp::Subtract: return "-";
    case BinaryOp::Multiply: return "*";
    case BinaryOp::Divide: return "/";
    case BinaryOp::Less: return "<";
    case BinaryOp::LessEqual: return "<=";
    case BinaryOp::Greater: return ">";
    case BinaryOp::GreaterEqual: return ">=";
    case BinaryOp::Equal: return "=";
    case BinaryOp::NotEqual: return "!=";
    case BinaryOp::And: return "and";
    case BinaryOp::Or: return "or";
  }
  return "?";
}

std::string_view function_name(Function fn) noexcept
{
  switch (fn) {
    case Function::Defined: return "defined";
    case Function::PctChange: return "pct_change";
    case Function::Abs: return "abs";
    case Function::Min: return "min";
    case Function::Max: return "max";
  }
  return "?";
}

std::size_t function_arity(Function fn) noexcept
{
  return (fn == Function::Min || fn == Function::Max) ? 2 : 1;
}

std::string ParseError::message() const
{
  return fmt::format("{}: expected {}, found {}", location_string(span), expected, found);
}

void visit_expr(const Expr& expr, const std::function<void(const Expr&)>& fn)
{
  fn(expr);
  for (const auto& a : expr.args) visit_expr(a, fn);
}

// ---------------------------------------------------------------------------
// Parser

namespace detail {
namespace {

enum Precedence { kOr = 1, kAnd, kCompare, kAdditive, kMultiplicative, kUnary, kPrimary };

constexpr int k_max_depth = 200;

std::optional<BinaryOp> comparison_op(TokenKind k)
{
  switch (k) {
    case TokenKind::Less: return BinaryOp::Less;
    case TokenKind::LessEqual: return BinaryOp::LessEqual;
    case TokenKind::Greater: return BinaryOp::Greater;
    case TokenKind::GreaterEqual: return BinaryOp::GreaterEqual;
    case TokenKind::Equal: return BinaryOp::Equal;
    case TokenKind::NotEqual: return BinaryOp::NotEqual;
    default: return std::nullopt;
  }
}

std::optional<Function> function_from_name(std::string_view w)
{
  if (w == "defined") return Function::Defined;
  if (w == "pct_change") return Function::PctChange;
  if (w == "abs") return Function::Abs;
  if (w == "min") return Function::Min;
  if (w == "max") return Function::Max;
  return std::nullopt;
}

class ExprParser {
 public:
  explicit ExprParser(TokenCursor& c) : c_(c) {}

  Expr parse_or()
  {
    DepthGuard guard(*this);
    Expr lhs = parse_and();
    while (c_.at_word("or")) {
      c_.next();
      lhs = binary(BinaryOp::Or, std::move(lhs), parse_and());
    }
    return lhs;
  }

 private:
  struct DepthGuard {
    explicit DepthGuard(ExprParser& p) : p(p)
    {
      if (++p.depth_ > k_max_depth) p.c_.fail("a less deeply nested expression");
    }
    ~DepthGuard() { --p.depth_; }
    ExprParser& p;
  };

  static Expr binary(BinaryOp op, Expr lhs, Expr rhs)
  {
    const SourceSpan span = join(lhs.span, rhs.span);
    Expr e = Expr::binary_op(op, std::move(lhs), std::move(rhs));
    e.span = span;
    return e;
  }

  Expr parse_and()
  {
    Expr lhs = parse_comparison();
    while (c_.at_word("and")) {
      c_.next();
      lhs = binary(BinaryOp::And, std::move(lhs), parse_comparison());
    }
    return lhs;
  }

  Expr parse_comparison()
  {
    Expr lhs = parse_additive();
    while (auto op = comparison_op(c_.peek().kind)) {
      c_.next();
      lhs = binary(*op, std::move(lhs), parse_additive());
    }
    return lhs;
  }

  Expr parse_additive()
  {
    Expr lhs = parse_multiplicative();
    for (;;) {
      if (c_.accept(TokenKind::Plus)) {
        lhs = binary(BinaryOp::Add, std::move(lhs), parse_multiplicative());
      } else if (c_.accept(TokenKind::Minus)) {
        lhs = binary(BinaryOp::Subtract, std::move(lhs), parse_multiplicative());
      } else {
        return lhs;
      }
    }
  }

  Expr parse_multiplicative()
  {
    Expr lhs = parse_unary();
    for (;;) {
      if (c_.accept(TokenKind::Star)) {
        lhs = binary(BinaryOp::Multiply, std::move(lhs), parse_unary());
      } else if (c_.accept(TokenKind::Slash)) {
        lhs = binary(BinaryOp::Divide, std::move(lhs), parse_unary());
      } else {
        return lhs;
      }
    }
  }

  Expr parse_unary()
  {
    DepthGuard guard(*this);
    const Token& first = c_.peek();
    if (c_.at_word("not") || c_.at(TokenKind::Minus)) {
      const UnaryOp op = c_.at(TokenKind::Minus) ? UnaryOp::Negate : UnaryOp::Not;
      c_.next();
      Expr operand = parse_unary();
      const SourceSpan span = join(first.span, operand.span);
      Expr e = Expr::unary_op(op, std::move(operand));
      e.span = span;
      return e;
    }
    return parse_primary();
  }

  static double to_double(const Token& tok)
  {
    double v = 0.0;
    const auto* begin = tok.text.data();
    const auto* end = begin + tok.text.size();
    const auto [ptr, ec] = std::from_chars(begin, end, v);
    if (ec != std::errc() || ptr != end || !std::isfinite(v)) {
      throw ParseFailure{ParseError{tok.span, "a finite number", describe(tok)}};
    }
    return v;
  }

  Expr parse_primary()
  {
    const Token& first = c_.peek();
    Expr e;
    if (first.is(TokenKind::Number)) {
      c_.next();
      e = Expr::number_literal(to_double(first));
    } else if (first.is(TokenKind::LParen)) {
      c_.next();
      e = parse_or();
      c_.expect(TokenKind::RParen);
    } else if (first.is_word("true") || first.is_word("false")) {
      c_.next();
      e = Expr::boolean_literal(first.text == "true");
    } else if (auto st = first.kind == TokenKind::Identifier ? status_from_keyword(first.text) : std::nullopt) {
      c_.next();
      e = Expr::status_literal(*st);
    } else if (first.is_word("status")) {
      c_.next();
      c_.expect(TokenKind::LParen);
      const Token& id = c_.expect_identifier("goal identifier");
      c_.expect(TokenKind::RParen);
      e = Expr::goal_status(id.text);
    } else if (auto fn = first.kind == TokenKind::Identifier ? function_from_name(first.text) : std::nullopt) {
      c_.next();
      e = parse_call(*fn);
    } else if (first.is(TokenKind::Identifier) && !is_reserved_word(first.text)) {
      e = parse_metric_ref();
    } else {
      c_.fail("expression");
    }
    e.span = c_.span_since(first);
    return e;
  }

  Expr parse_call(Function fn)
  {
    c_.expect(TokenKind::LParen);
    std::vector<Expr> args;
    if (fn == Function::PctChange) {
      const Token& start = c_.peek();
      if (!start.is(TokenKind::Identifier) || is_reserved_word(start.text)) c_.fail("metric reference");
      args.push_back(parse_metric_ref());
      args.back().span = c_.span_since(start);
    } else {
      args.push_back(parse_or());
      for (std::size_t i = 1; i < function_arity(fn); ++i) {
        c_.expect(TokenKind::Comma);
        args.push_back(parse_or());
      }
    }
    c_.expect(TokenKind::RParen);
    return Expr::call(fn, std::move(args));
  }

  // IDENT [ '[' 't' [ '-' INT ] ']' ]
  Expr parse_metric_ref()
  {
    const Token& id = c_.next();
    std::int64_t lag = 0;
    if (c_.accept(TokenKind::LBracket)) {
      c_.expect_word("t");
      if (c_.accept(TokenKind::Minus)) {
        const Token& n = c_.peek();
        if (!n.is(TokenKind::Number) || !n.integral) c_.fail("non-negative integer lag");
        const auto [ptr, ec] = std::from_chars(n.text.data(), n.text.data() + n.text.size(), lag);
        if (ec != std::errc()) c_.fail("lag that fits in 64 bits");
        c_.next();
      }
      c_.expect(TokenKind::RBracket);
    }
    return Expr::metric(id.text, lag);
  }

  TokenCursor& c_;
  int depth_ = 0;
};

}  // namespace

Expr parse_expression(TokenCursor& cursor)
{
  return ExprParser(cursor).parse_or();
}

}  // namespace detail

Result<Expr, ParseError> parse_expr(std::string_view text, std::string_view file_name)
{
  const LexOutput lexed = tokenize(text, file_name);
  if (!lexed.errors.empty()) {
    const auto& err = lexed.errors.front();
    return ParseError{err.span, "valid token", err.message};
  }
  detail::TokenCursor cursor(lexed.tokens);
  try {
    Expr e = detail::parse_expression(cursor);
    if (!cursor.at_end()) cursor.fail("end of expression");
    return e;
  } catch (const detail::ParseFailure& f) {
    return f.error;
  }
}

// ---------------------------------------------------------------------------
// Printing

std::string number_to_string(double v)
{
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc()) return "?";
  return std::string(buf, ptr);
}

namespace {

using Annotator = std::function<std::optional<std::string>(const Expr&)>;

int precedence(const Expr& e)
{
  if (e.kind == ExprKind::Unary) return detail::kUnary;
  if (e.kind != ExprKind::Binary) return detail::kPrimary;
  switch (e.binary) {
    case BinaryOp::Or: return detail::kOr;
    case BinaryOp::And: return detail::kAnd;
    case BinaryOp::Add:
    case BinaryOp::Subtract: return detail::kAdditive;
    case BinaryOp::Multiply:
    case BinaryOp::Divide: return detail::kMultiplicative;
    default: return detail::kCompare;
  }
}

std::string metric_text(const Expr& e, bool bare_ok)
{
  if (e.lag == 0) return bare_ok ? e.name : e.name + "[t]";
  return fmt::format("{}[t-{}]", e.name, e.lag);
}

void print(const Expr& e, std::string& out, const Annotator* annotate);

void print_child(const Expr& child, bool parens, std::string& out, const Annotator* annotate)
{
  if (parens) out += '(';
  print(child, out, annotate);
  if (parens) out += ')';
}

void print(const Expr& e, std::string& out, const Annotator* annotate)
{
  switch (e.kind) {
    case ExprKind::Number: out += number_to_string(e.number); break;
    case ExprKind::Boolean: out += e.boolean ? "true" : "false"; break;
    case ExprKind::Status: out += status_keyword(e.status); break;
    case ExprKind::Metric: out += metric_text(e, false); break;
    case ExprKind::GoalStatus: out += fmt::format("status({})", e.name); break;
    case ExprKind::Unary: {
      out += e.unary == UnaryOp::Not ? "not " : "-";
      const Expr& operand = e.args.at(0);
      print_child(operand, precedence(operand) < detail::kUnary, out, annotate);
      break;
    }
    case ExprKind::Binary: {
      const int p = precedence(e);
      print_child(e.args.at(0), precedence(e.args.at(0)) < p, out, annotate);
      out += ' ';
      out += binary_op_spelling(e.binary);
      out += ' ';
      print_child(e.args.at(1), precedence(e.args.at(1)) <= p, out, annotate);
      break;
    }
    case ExprKind::Call: {
      out += function_name(e.function);
      out += '(';
      if (e.function == Function::PctChange) {
        out += metric_text(e.args.at(0), true);
      } else {
        for (std::size_t i = 0; i < e.args.size(); ++i) {
          if (i > 0) out += ", ";
          print(e.args[i], out, annotate);
        }
      }
      out += ')';
      break;
    }
  }
  if (annotate) {
    if (auto suffix = (*annotate)(e)) out += *suffix;
  }
}

}  // namespace

std::string format_expr(const Expr& e)
{
  std::string out;
  print(e, out, nullptr);
  return out;
}

std::string annotate_expr(const Expr& expr, const EvalEnv& env)
{
  const Annotator annotator = [&env](const Expr& e) -> std::optional<std::string> {
    const bool leaf = e.kind == ExprKind::Metric || e.kind == ExprKind::GoalStatus ||
                      (e.kind == ExprKind::Call && e.function == Function::PctChange);
    if (!leaf) return std::nullopt;
    const Value v = eval_expr(e, env);
    return "=" + (is_unknown(v) ? std::string(e.kind == ExprKind::GoalStatus ? "unknown" : "missing")
                                : value_to_string(v));
  };
  std::string out;
  print(expr, out, &annotator);
  return out;
}

std::string_view type_name(ExprType t) noexcept
{
  switch (t) {
    case ExprType::Number: return "number";
    case ExprType::Boolean: return "boolean";
    case ExprType::Status: return "status";
    case ExprType::Invalid: return "invalid";
  }
  return "invalid";
}

bool is_unknown(const Value& v) noexcept { return std::holds_alternative<Unknown>(v); }

std::string value_to_string(const Value& v)
{
  if (const auto* d = std::get_if<double>(&v)) return number_to_string(*d);
  if (const auto* b = std::get_if<bool>(&v)) return *b ? "true" : "false";
  if (const auto* s = std::get_if<GoalStatus>(&v)) return std::string(status_keyword(*s));
  return "unknown";
}

}  // namespace gqms
