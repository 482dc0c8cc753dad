#include <cmath>

#include "gqms/expr.hpp"

namespace gqms {
namespace {

std::optional<double> as_number(const Value& v)
{
  if (const auto* d = std::get_if<double>(&v)) return *d;
  return std::nullopt;
}

std::optional<bool> as_bool(const Value& v)
{
  if (const auto* b = std::get_if<bool>(&v)) return *b;
  return std::nullopt;
}

Value finite(double v)
{
  if (!std::isfinite(v)) return Unknown{};
  return v;
}

std::optional<double> lookup_number(const EvalEnv& env, std::string_view metric, std::int64_t period)
{
  if (period < 0 || !env.metric) return std::nullopt;
  const auto datum = env.metric(metric, period);
  if (!datum) return std::nullopt;
  if (const auto* d = std::get_if<double>(&*datum)) return *d;
  return std::nullopt;
}

Value eval_metric(const Expr& e, const EvalEnv& env)
{
  const std::int64_t period = env.period - e.lag;
  if (period < 0 || !env.metric) return Unknown{};
  const auto datum = env.metric(e.name, period);
  if (!datum) return Unknown{};
  if (const auto* d = std::get_if<double>(&*datum)) return finite(*d);
  return std::get<bool>(*datum);
}

bool nearly_equal(double a, double b)
{
  return std::fabs(a - b) <= k_number_tolerance * std::fmax(std::fabs(a), std::fabs(b));
}

Value arithmetic(BinaryOp op, double a, double b)
{
  switch (op) {
    case BinaryOp::Add: return finite(a + b);
    case BinaryOp::Subtract: return finite(a - b);
    case BinaryOp::Multiply: return finite(a * b);
    case BinaryOp::Divide:
      if (b == 0.0) return Unknown{};
      return finite(a / b);
    default: return Unknown{};
  }
}

Value compare(BinaryOp op, const Value& l, const Value& r)
{
  if (is_unknown(l) || is_unknown(r)) return Unknown{};
  if (op == BinaryOp::Equal || op == BinaryOp::NotEqual) {
    bool equal = false;
    if (auto a = as_number(l), b = as_number(r); a && b) {
      equal = nearly_equal(*a, *b);
    } else if (std::holds_alternative<GoalStatus>(l) && std::holds_alternative<GoalStatus>(r)) {
      equal = std::get<GoalStatus>(l) == std::get<GoalStatus>(r);
    } else {
      return Unknown{};
    }
    return op == BinaryOp::Equal ? equal : !equal;
  }
  const auto a = as_number(l);
  const auto b = as_number(r);
  if (!a || !b) return Unknown{};
  const bool same = nearly_equal(*a, *b);
  switch (op) {
    case BinaryOp::Less: return !same && *a < *b;
    case BinaryOp::LessEqual: return same || *a < *b;
    case BinaryOp::Greater: return !same && *a > *b;
    case BinaryOp::GreaterEqual: return same || *a > *b;
    default: return Unknown{};
  }
}

Value eval_binary(const Expr& e, const EvalEnv& env)
{
  const Value l = eval_expr(e.args.at(0), env);
  const Value r = eval_expr(e.args.at(1), env);
  switch (e.binary) {
    case BinaryOp::And: {
      const auto a = as_bool(l);
      const auto b = as_bool(r);
      if ((a && !*a) || (b && !*b)) return false;
      if (a && b) return true;
      return Unknown{};
    }
    case BinaryOp::Or: {
      const auto a = as_bool(l);
      const auto b = as_bool(r);
      if ((a && *a) || (b && *b)) return true;
      if (a && b) return false;
      return Unknown{};
    }
    case BinaryOp::Add:
    case BinaryOp::Subtract:
    case BinaryOp::Multiply:
    case BinaryOp::Divide: {
      const auto a = as_number(l);
      const auto b = as_number(r);
      if (!a || !b) return Unknown{};
      return arithmetic(e.binary, *a, *b);
    }
    default: return compare(e.binary, l, r);
  }
}

Value eval_call(const Expr& e, const EvalEnv& env)
{
  switch (e.function) {
    case Function::Defined: return !is_unknown(eval_expr(e.args.at(0), env));
    case Function::PctChange: {
      const Expr& m = e.args.at(0);
      const std::int64_t period = env.period - m.lag;
      const auto current = lookup_number(env, m.name, period);
      const auto previous = lookup_number(env, m.name, period - 1);
      if (!current || !previous || *previous == 0.0) return Unknown{};
      return arithmetic(BinaryOp::Divide, *current - *previous, *previous);
    }
    case Function::Abs: {
      const auto a = as_number(eval_expr(e.args.at(0), env));
      if (!a) return Unknown{};
      return std::fabs(*a);
    }
    case Function::Min:
    case Function::Max: {
      const auto a = as_number(eval_expr(e.args.at(0), env));
      const auto b = as_number(eval_expr(e.args.at(1), env));
      if (!a || !b) return Unknown{};
      if (e.function == Function::Min) return *b < *a ? *b : *a;
      return *b > *a ? *b : *a;
    }
  }
  return Unknown{};
}

}  // namespace

Value eval_expr(const Expr& e, const EvalEnv& env)
{
  switch (e.kind) {
    case ExprKind::Number: return finite(e.number);
    case ExprKind::Boolean: return e.boolean;
    case ExprKind::Status: return e.status;
    case ExprKind::Metric: return eval_metric(e, env);
    case ExprKind::GoalStatus: {
      if (!env.status) return Unknown{};
      const auto s = env.status(e.name);
      if (!s) return Unknown{};
      return *s;
    }
    case ExprKind::Unary: {
      const Value v = eval_expr(e.args.at(0), env);
      if (e.unary == UnaryOp::Not) {
        const auto b = as_bool(v);
        if (!b) return Unknown{};
        return !*b;
      }
      const auto n = as_number(v);
      if (!n) return Unknown{};
      return -*n;
    }
    case ExprKind::Binary: return eval_binary(e, env);
    case ExprKind::Call: return eval_call(e, env);
  }
  return Unknown{};
}

}  // namespace gqms
