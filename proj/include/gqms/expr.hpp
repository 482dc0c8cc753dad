#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "gqms/result.hpp"
#include "gqms/source_span.hpp"
#include "gqms/status.hpp"

namespace gqms {

struct Model;
struct Token;

enum class ExprKind {
  Number,
  Boolean,
  Status,
  Metric,       // name[t-lag]
  GoalStatus,   // status(name)
  Unary,
  Binary,
  Call,
};

enum class UnaryOp { Not, Negate };

enum class BinaryOp {
  Add,
  Subtract,
  Multiply,
  Divide,
  Less,
  LessEqual,
  Greater,
  GreaterEqual,
  Equal,
  NotEqual,
  And,
  Or,
};

enum class Function { Defined, PctChange, Abs, Min, Max };

/// Interpretation-expression node. Children live in `args`, so an Expr
/// is a plain value that copies and compares structurally.
struct Expr {
  ExprKind kind = ExprKind::Boolean;
  double number = 0.0;
  bool boolean = false;
  gqms::GoalStatus status = gqms::GoalStatus::Undetermined;
  std::string name;        // metric or goal identifier
  std::int64_t lag = 0;    // Metric only
  UnaryOp unary = UnaryOp::Not;
  BinaryOp binary = BinaryOp::And;
  Function function = Function::Defined;
  std::vector<Expr> args;
  SourceSpan span;

  bool operator==(const Expr&) const = default;

  static Expr number_literal(double v);
  static Expr boolean_literal(bool v);
  static Expr status_literal(gqms::GoalStatus s);
  static Expr metric(std::string id, std::int64_t lag = 0);
  static Expr goal_status(std::string goal);
  static Expr unary_op(UnaryOp op, Expr operand);
  static Expr binary_op(BinaryOp op, Expr lhs, Expr rhs);
  static Expr call(Function fn, std::vector<Expr> args);
};

std::string_view binary_op_spelling(BinaryOp op) noexcept;
std::string_view function_name(Function fn) noexcept;
std::size_t function_arity(Function fn) noexcept;

// ---------------------------------------------------------------------------
// Parsing and printing

struct ParseError {
  SourceSpan span;
  std::string expected;
  std::string found;

  /// `file:line:col: expected X, found Y`
  [[nodiscard]] std::string message() const;
};

/// Parses a standalone interpretation expression.
Result<Expr, ParseError> parse_expr(std::string_view text, std::string_view file_name = "<expr>");

/// Canonical text with minimal parentheses. `M[t]` is printed for lag 0
/// except inside pct_change, which takes a bare metric name.
std::string format_expr(const Expr& e);

// ---------------------------------------------------------------------------
// Type checking

enum class ExprType { Number, Boolean, Status, Invalid };
std::string_view type_name(ExprType t) noexcept;

struct TypeError {
  enum class Kind { Mismatch, UnknownMetric, UnknownGoal };
  Kind kind = Kind::Mismatch;
  SourceSpan span;
  std::string expected;
  std::string found;
  std::string message;
};

struct TypeCheckResult {
  ExprType type = ExprType::Invalid;
  std::vector<TypeError> errors;
  [[nodiscard]] bool ok() const noexcept { return errors.empty(); }
};

/// Checks operand kinds against the model's metric declarations. With
/// `require_boolean_root`, a non-boolean root is reported as well.
TypeCheckResult typecheck_expr(const Expr& expr, const Model& model, bool require_boolean_root = true);

// ---------------------------------------------------------------------------
// Evaluation

struct Unknown {
  bool operator==(const Unknown&) const = default;
};

/// Runtime value. Numbers are always finite; Unknown stands for missing
/// or unknowable data.
using Value = std::variant<double, bool, gqms::GoalStatus, Unknown>;

/// Observed metric value.
using Datum = std::variant<double, bool>;

struct EvalEnv {
  /// (metric id, absolute period) -> observed value, or nullopt if missing.
  std::function<std::optional<Datum>(std::string_view, std::int64_t)> metric;
  /// goal id -> status, or nullopt if not (yet) known.
  std::function<std::optional<gqms::GoalStatus>(std::string_view)> status;
  std::int64_t period = 0;
};

/// Relative tolerance of numeric comparisons: a and b compare equal when
/// |a - b| <= k_number_tolerance * max(|a|, |b|). Decimal literals such as
/// 1.15 have no exact binary form, so `115 > 1.15 * 100` would otherwise
/// be true.
inline constexpr double k_number_tolerance = 1e-12;

/// Strict Kleene evaluation. Never throws for data conditions: missing
/// values, negative periods, and division by zero all yield Unknown.
Value eval_expr(const Expr& expr, const EvalEnv& env);

bool is_unknown(const Value& v) noexcept;
std::string value_to_string(const Value& v);
std::string number_to_string(double v);

/// Expression text with every metric, status and pct_change leaf
/// annotated by its runtime value, e.g. `P[t]=116 > 1.15 * P[t-1]=100`.
std::string annotate_expr(const Expr& expr, const EvalEnv& env);

/// Calls `fn` on every node, pre-order.
void visit_expr(const Expr& expr, const std::function<void(const Expr&)>& fn);

}  // namespace gqms
